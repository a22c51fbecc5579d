#include "pandora/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pandora/errors.hpp"

namespace pandora {

double DiscreteDistribution::mean() const {
  long double m = 0.0L;
  for (std::size_t i = 0; i < values.size(); ++i) {
    m += static_cast<long double>(probs[i]) * values[i];
  }
  return static_cast<double>(m);
}

DiscreteDistribution make_distribution(
    std::vector<std::pair<double, double>> entries) {
  long double total = 0.0L;
  for (const auto& [v, p] : entries) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::NegativeValue,
                  "support value must be finite and nonnegative, got " +
                      std::to_string(v));
    }
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorKind::NegativeProbability,
                  "probability must be finite and nonnegative, got " +
                      std::to_string(p));
    }
    total += p;
  }
  if (std::abs(total - 1.0L) > 1e-9L) {
    throw Error(ErrorKind::ProbabilitySumMismatch,
                "probabilities sum to " +
                    std::to_string(static_cast<double>(total)) +
                    ", expected 1 within 1e-9");
  }

  std::sort(entries.begin(), entries.end());
  DiscreteDistribution d;
  for (const auto& [v, p] : entries) {
    if (p == 0.0) continue;
    if (!d.values.empty() && d.values.back() == v) {
      d.probs.back() += p;
    } else {
      d.values.push_back(v);
      d.probs.push_back(p);
    }
  }
  if (d.values.empty()) {
    throw Error(ErrorKind::ProbabilitySumMismatch,
                "distribution has no support");
  }
  for (double& p : d.probs) {
    p = static_cast<double>(p / total);
  }
  return d;
}

double expected_shortfall(const DiscreteDistribution& dist, double sigma) {
  double acc = 0.0;
  for (std::size_t i = 0; i < dist.values.size(); ++i) {
    double gap = sigma - dist.values[i];
    if (gap > 0.0) acc += dist.probs[i] * gap;
  }
  return acc;
}

ReservationValue reservation_value(const DiscreteDistribution& dist,
                                   double cost) {
  if (!(cost >= 0.0) || !std::isfinite(cost)) {
    throw Error(ErrorKind::NegativeValue,
                "observation cost must be finite and nonnegative");
  }
  if (cost == 0.0) {
    return ReservationValue{dist.min_value(), 0.0};
  }
  // On [v_k, v_{k+1}] the shortfall is F_k * sigma - S_k with F_k, S_k the
  // prefix probability mass and prefix mass-weighted values.
  long double f = 0.0L;
  long double s = 0.0L;
  const std::size_t m = dist.size();
  for (std::size_t k = 0; k < m; ++k) {
    f += dist.probs[k];
    s += static_cast<long double>(dist.probs[k]) * dist.values[k];
    if (k + 1 < m) {
      long double at_next = f * dist.values[k + 1] - s;
      if (cost > at_next) continue;
    }
    double sigma = static_cast<double>((cost + s) / f);
    return ReservationValue{sigma, expected_shortfall(dist, sigma) - cost};
  }
  // Unreachable: the final segment extends to +infinity.
  return ReservationValue{std::numeric_limits<double>::quiet_NaN(),
                          std::numeric_limits<double>::quiet_NaN()};
}

double sample(const DiscreteDistribution& dist, double u) {
  double cum = 0.0;
  for (std::size_t i = 0; i < dist.values.size(); ++i) {
    cum += dist.probs[i];
    if (u < cum) return dist.values[i];
  }
  return dist.values.back();
}

}  // namespace pandora
