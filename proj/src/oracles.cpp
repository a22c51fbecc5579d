#include "pandora/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "pandora/errors.hpp"

namespace pandora {

namespace {

struct VectorCursor : ValueCursor {
  const std::vector<double>* values;
  double value(std::size_t i) override { return (*values)[i]; }
};

void check_cost_vector(const VariantSpec& variant, std::size_t n,
                       const std::vector<double>& costs) {
  if (n == 0) throw Error(ErrorKind::Usage, "need at least one value");
  if (variant.observation_cost && costs.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "one cost per value required");
  }
}

}  // namespace

double prophet_payoff(const VariantSpec& variant,
                      const std::vector<double>& values,
                      const std::vector<double>& costs) {
  check_cost_vector(variant, values.size(), costs);
  VectorCursor src;
  src.values = &values;
  return prophet_payoff_lazy(variant, costs, src, values.size());
}

double prophet_payoff_lazy(const VariantSpec& variant,
                           const std::vector<double>& costs, ValueCursor& src,
                           std::size_t n) {
  check_cost_vector(variant, n, costs);
  const bool minimize = variant.objective == Objective::Min;

  if (!variant.observation_cost) {
    double best = src.value(0);
    for (std::size_t i = 1; i < n; ++i) {
      double v = src.value(i);
      best = minimize ? std::min(best, v) : std::max(best, v);
    }
    return best;
  }

  if (variant.order_selection) {
    // One box is opened; pick the best value-cost combination.
    double best = minimize ? src.value(0) + costs[0] : src.value(0) - costs[0];
    for (std::size_t i = 1; i < n; ++i) {
      double net = minimize ? src.value(i) + costs[i] : src.value(i) - costs[i];
      best = minimize ? std::min(best, net) : std::max(best, net);
    }
    return best;
  }

  // Fixed order: optimize the stopping time, costs paid up to and including
  // it. For minimization, once the sunk cost of the next step reaches the
  // best total so far no later stop can improve (values are nonnegative).
  double paid = 0.0;
  double run = 0.0;
  double best = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    double paid_next = paid + costs[t];
    if (t > 0 && minimize && paid_next >= best) break;
    paid = paid_next;
    double v = src.value(t);
    if (t == 0) {
      run = v;
    } else {
      run = minimize ? std::min(run, v) : std::max(run, v);
    }
    double net = minimize ? run + paid : run - paid;
    if (t == 0) {
      best = net;
    } else {
      best = minimize ? std::min(best, net) : std::max(best, net);
    }
  }
  return best;
}

double ski_prophet(std::int64_t T, double B) {
  return std::min(static_cast<double>(T), B);
}

double db_ski_offline_opt(const std::vector<double>& a,
                          const std::vector<double>& p) {
  if (a.size() != p.size() + 1) {
    throw Error(ErrorKind::LengthMismatch,
                "need one more buy price than rents");
  }
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (a[i + 1] > a[i]) {
      throw Error(ErrorKind::NotDecreasing, "buy prices must not increase");
    }
  }
  double paid = 0.0;
  double best = a[0];
  for (std::size_t j = 0; j < p.size(); ++j) {
    paid += p[j];
    best = std::min(best, a[j + 1] + paid);
  }
  return best;
}

WeakProphetPolicy::WeakProphetPolicy(const Instance& instance) {
  instance.validate();
  const auto& v = instance.variant;
  if (v.objective != Objective::Min || v.commitment || !v.observation_cost ||
      v.order_selection) {
    throw Error(ErrorKind::VariantMismatch,
                "multiset benchmark is defined for minimization with costs in "
                "arrival order, no commitment");
  }
  const Box& first = instance.boxes.front();
  if (first.dist.values.size() > 2) {
    throw Error(ErrorKind::UnsupportedInstance,
                "multiset benchmark needs two-point value distributions");
  }
  for (const auto& box : instance.boxes) {
    if (box.cost != first.cost || box.dist.values != first.dist.values ||
        box.dist.probs != first.dist.probs) {
      throw Error(ErrorKind::UnsupportedInstance,
                  "multiset benchmark needs identical boxes");
    }
  }
}

void WeakProphetPolicy::observe_multiset(
    const std::vector<double>& sorted_values) {
  multiset_min_ = sorted_values.front();
}

Action WeakProphetPolicy::decide(const PolicyState& state) {
  if (state.best_index >= 0 && state.best_value == multiset_min_) {
    return Action::stop(state.best_index);
  }
  if (state.next_arrival < static_cast<int>(state.n())) {
    return Action::open(state.next_arrival);
  }
  return Action::stop(state.best_index);
}

std::unique_ptr<Policy> WeakProphetPolicy::clone() const {
  return std::make_unique<WeakProphetPolicy>(*this);
}

}  // namespace pandora
