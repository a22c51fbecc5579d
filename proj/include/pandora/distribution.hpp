#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace pandora {

// Finite distribution over nonnegative reals. Support is sorted strictly
// increasing; probabilities are positive and sum to 1 within 1e-12.
struct DiscreteDistribution {
  std::vector<double> values;
  std::vector<double> probs;

  std::size_t size() const { return values.size(); }
  double min_value() const { return values.front(); }
  double max_value() const { return values.back(); }
  double mean() const;

  bool operator==(const DiscreteDistribution&) const = default;
};

// Builds a distribution from (value, probability) pairs. Duplicate values are
// merged, zero-probability entries dropped. Input probabilities must sum to 1
// within 1e-9; the stored ones are renormalized to sum within 1e-12.
DiscreteDistribution make_distribution(
    std::vector<std::pair<double, double>> entries);

// E[(sigma - V)^+]. Plain left-to-right sum over the support; callers who
// need to reproduce it exactly can (and tests do).
double expected_shortfall(const DiscreteDistribution& dist, double sigma);

struct ReservationValue {
  double sigma = 0.0;
  double residual = 0.0;  // expected_shortfall(sigma) - cost
};

// Solves E[(sigma - V)^+] = cost for sigma by scanning the piecewise-linear
// segments of the shortfall; no iterative root finding. cost = 0 gives the
// smallest support value.
ReservationValue reservation_value(const DiscreteDistribution& dist,
                                   double cost);

// Inverse-CDF draw: smallest support value whose cumulative probability
// exceeds u. A draw equal to a cumulative boundary selects the next value.
double sample(const DiscreteDistribution& dist, double u);

}  // namespace pandora
