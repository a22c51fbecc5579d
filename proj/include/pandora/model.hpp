#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pandora/distribution.hpp"

namespace pandora {

enum class Objective { Min, Max };

// One cell of the problem grid: what we optimize, whether a skipped value is
// gone for good, whether opening costs money, and who picks the order.
struct VariantSpec {
  Objective objective = Objective::Min;
  bool commitment = false;
  bool observation_cost = false;
  bool order_selection = false;

  bool operator==(const VariantSpec&) const = default;
};

struct Box {
  double cost = 0.0;
  DiscreteDistribution dist;

  bool operator==(const Box&) const = default;
};

struct Instance {
  VariantSpec variant;
  // Arrival order when order_selection is false.
  std::vector<Box> boxes;

  std::size_t n() const { return boxes.size(); }
  void validate() const;

  bool operator==(const Instance&) const = default;
};

// Exact finite-n benchmark and algorithm values for one generated family.
struct ClosedFormReport {
  std::int64_t n = 0;
  double prophet = 0.0;
  double alg = 0.0;
  std::map<std::string, double> extras;
};

// Hard instances. Each generator pairs with a closed_form_* function below
// that predicts the benchmark and algorithm payoffs without simulation.
Instance gen_example_max_cost(std::int64_t n, bool order_selection,
                              bool commitment);
Instance gen_example_min_orderselect(std::int64_t n);
Instance gen_tightness_instance(std::int64_t n);

// sum_{i=1}^{k} i q^{i-1}, evaluated in closed form.
double geom_weighted_sum(std::int64_t k, double q);
// q^k / (1 - q), the full geometric tail past the first k terms.
double geom_tail(std::int64_t k, double q);

ClosedFormReport closed_form_example32(std::int64_t n);
ClosedFormReport closed_form_example41(std::int64_t n);
ClosedFormReport closed_form_tightness(std::int64_t n);

}  // namespace pandora
