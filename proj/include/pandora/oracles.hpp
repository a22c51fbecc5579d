#pragma once

#include <cstdint>
#include <vector>

#include "pandora/model.hpp"
#include "pandora/policies.hpp"

namespace pandora {

struct Realization {
  std::vector<double> values;  // one per box, arrival order
};

// Sequential access to realized values; implementations may materialize
// lazily but must be stable under repeated access.
class ValueCursor {
 public:
  virtual double value(std::size_t i) = 0;

 protected:
  ~ValueCursor() = default;
};

// Full-information benchmark for one realization. Cost accounting by cell:
// no cost: best value outright; fixed order with cost: best over stopping
// times of value net of all costs paid up to and including that step; order
// selection with cost: best single value-cost pair (one box is opened).
// Commitment does not change the benchmark.
double prophet_payoff(const VariantSpec& variant,
                      const std::vector<double>& values,
                      const std::vector<double>& costs);

// Same computation reading values through a cursor; for minimization with
// fixed order it stops materializing once later stops cannot improve.
double prophet_payoff_lazy(const VariantSpec& variant,
                           const std::vector<double>& costs, ValueCursor& src,
                           std::size_t n);

// min(T, B): rent all T days or buy immediately.
double ski_prophet(std::int64_t T, double B);

// min over stopping points j of a[j] plus all rents before j.
double db_ski_offline_opt(const std::vector<double>& a,
                          const std::vector<double>& p);

// Benchmark knowing the realized multiset but not the arrival order. Defined
// for i.i.d. two-point instances: hunts for the known minimum if one is
// present, otherwise settles immediately.
class WeakProphetPolicy : public Policy {
 public:
  explicit WeakProphetPolicy(const Instance& instance);
  std::string_view name() const override { return "weak-prophet"; }
  bool needs_realization() const override { return true; }
  void observe_multiset(const std::vector<double>& sorted_values) override;
  Action decide(const PolicyState& state) override;
  std::unique_ptr<Policy> clone() const override;

 private:
  double multiset_min_ = 0.0;
};

}  // namespace pandora
