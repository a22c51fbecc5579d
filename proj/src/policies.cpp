#include "pandora/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pandora/distribution.hpp"
#include "pandora/errors.hpp"

namespace pandora {

namespace {

void require_variant(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::VariantMismatch, what);
}

}  // namespace

WeitzmanPolicy::WeitzmanPolicy(const Instance& instance) {
  instance.validate();
  require_variant(instance.variant.objective == Objective::Min,
                  "index policy minimizes");
  require_variant(instance.variant.observation_cost,
                  "index policy needs opening costs");
  require_variant(!instance.variant.commitment,
                  "index policy selects the running best, not the last box");

  sigma_.reserve(instance.n());
  for (const auto& box : instance.boxes) {
    sigma_.push_back(reservation_value(box.dist, box.cost).sigma);
  }
  order_.resize(instance.n());
  std::iota(order_.begin(), order_.end(), 0);
  if (instance.variant.order_selection) {
    std::stable_sort(order_.begin(), order_.end(), [this](int a, int b) {
      return sigma_[static_cast<std::size_t>(a)] <
             sigma_[static_cast<std::size_t>(b)];
    });
  }
}

Action WeitzmanPolicy::decide(const PolicyState& state) {
  int next = -1;
  if (state.instance->variant.order_selection) {
    for (int box : order_) {
      if (!state.is_open[static_cast<std::size_t>(box)]) {
        next = box;
        break;
      }
    }
  } else if (state.next_arrival < static_cast<int>(state.n())) {
    next = state.next_arrival;
  }
  if (next < 0) return Action::stop(state.best_index);
  if (state.best_index >= 0 &&
      state.best_value < sigma_[static_cast<std::size_t>(next)]) {
    return Action::stop(state.best_index);
  }
  return Action::open(next);
}

std::unique_ptr<Policy> WeitzmanPolicy::clone() const {
  return std::make_unique<WeitzmanPolicy>(*this);
}

SkiRentalPolicy::SkiRentalPolicy(const Instance& instance, bool randomized)
    : randomized_(randomized) {
  instance.validate();
  require_variant(instance.variant.objective == Objective::Min,
                  "rent-or-buy minimizes");
  require_variant(instance.variant.observation_cost,
                  "rent-or-buy needs opening costs");
  require_variant(!instance.variant.commitment,
                  "rent-or-buy selects the running best");
  require_variant(!instance.variant.order_selection,
                  "rent-or-buy runs against the arrival order");
}

void SkiRentalPolicy::begin_trial(SplitMix64* rng) {
  progress_ = 0.0;
  if (!randomized_) return;
  // Threshold with density e^z / (e - 1) on [0, 1].
  z_ = std::log1p(rng->uniform() * std::expm1(1.0));
}

Action SkiRentalPolicy::decide(const PolicyState& state) {
  if (state.next_arrival >= static_cast<int>(state.n())) {
    return Action::stop(state.best_index);
  }
  double buy = state.best_index >= 0 ? state.best_value : kInf;
  double rent =
      state.instance->boxes[static_cast<std::size_t>(state.next_arrival)].cost;
  if (buy <= 0.0) return Action::stop(state.best_index);
  if (randomized_) {
    // Buy once the accumulated rent, in units of the current buy price,
    // reaches the trial threshold; the triggering rent itself is not paid.
    double step = std::isinf(buy) ? 0.0 : rent / buy;
    if (!std::isinf(buy) && progress_ + step >= z_) {
      return Action::stop(state.best_index);
    }
    progress_ += step;
    return Action::open(state.next_arrival);
  }
  // Break-even: buy as soon as the rents paid plus the next rent would reach
  // the buy price. Guarantees total <= 2x the offline optimum pointwise.
  if (state.payments + rent >= buy) return Action::stop(state.best_index);
  return Action::open(state.next_arrival);
}

std::unique_ptr<Policy> SkiRentalPolicy::clone() const {
  return std::make_unique<SkiRentalPolicy>(*this);
}

ThresholdPolicy::ThresholdPolicy(const Instance& instance,
                                 std::optional<double> tau) {
  instance.validate();
  require_variant(instance.variant.objective == Objective::Max,
                  "threshold rule maximizes");
  require_variant(!instance.variant.observation_cost,
                  "threshold rule assumes free opening");
  require_variant(instance.variant.commitment,
                  "threshold rule is for take-it-or-leave-it offers");
  tau_ = tau ? *tau : half_max_threshold(instance);
}

Action ThresholdPolicy::decide(const PolicyState& state) {
  if (state.last_index >= 0 && state.last_value >= tau_) {
    return Action::stop(state.last_index);
  }
  if (state.next_arrival < static_cast<int>(state.n())) {
    return Action::open(state.next_arrival);
  }
  return Action::stop(state.last_index);
}

std::unique_ptr<Policy> ThresholdPolicy::clone() const {
  return std::make_unique<ThresholdPolicy>(*this);
}

OpenAllPolicy::OpenAllPolicy(const Instance& instance) {
  instance.validate();
  require_variant(!instance.variant.observation_cost,
                  "opening everything only pays off when opening is free");
  require_variant(!instance.variant.commitment,
                  "opening everything keeps the best box available");
}

Action OpenAllPolicy::decide(const PolicyState& state) {
  if (state.next_arrival < static_cast<int>(state.n())) {
    return Action::open(state.next_arrival);
  }
  return Action::stop(state.best_index);
}

std::unique_ptr<Policy> OpenAllPolicy::clone() const {
  return std::make_unique<OpenAllPolicy>(*this);
}

double median_threshold(const Instance& instance) {
  instance.validate();
  std::vector<double> support;
  for (const auto& box : instance.boxes) {
    support.insert(support.end(), box.dist.values.begin(),
                   box.dist.values.end());
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  for (double v : support) {
    long double below = 1.0L;
    for (const auto& box : instance.boxes) {
      long double mass = 0.0L;
      const auto& d = box.dist;
      for (std::size_t i = 0; i < d.values.size() && d.values[i] < v; ++i) {
        mass += d.probs[i];
      }
      below *= mass;
    }
    if (1.0L - below <= 0.5L) return v;
  }
  return support.back();
}

double half_max_threshold(const Instance& instance) {
  instance.validate();
  std::vector<double> support;
  for (const auto& box : instance.boxes) {
    support.insert(support.end(), box.dist.values.begin(),
                   box.dist.values.end());
  }
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  long double expected = 0.0L;
  long double prev_cdf = 0.0L;
  for (double v : support) {
    long double cdf = 1.0L;
    for (const auto& box : instance.boxes) {
      long double mass = 0.0L;
      const auto& d = box.dist;
      for (std::size_t i = 0; i < d.values.size() && d.values[i] <= v; ++i) {
        mass += d.probs[i];
      }
      cdf *= mass;
    }
    expected += static_cast<long double>(v) * (cdf - prev_cdf);
    prev_cdf = cdf;
  }
  return static_cast<double>(expected) * 0.5;
}

double db_ski_run(const std::vector<double>& a, const std::vector<double>& p,
                  bool randomized, SplitMix64* rng) {
  if (a.size() != p.size() + 1) {
    throw Error(ErrorKind::LengthMismatch,
                "need one more buy price than rents");
  }
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    if (a[i + 1] > a[i]) {
      throw Error(ErrorKind::NotDecreasing, "buy prices must not increase");
    }
  }
  for (double rent : p) {
    if (!(rent >= 0.0) || std::isinf(rent)) {
      throw Error(ErrorKind::NegativeValue, "rents must be finite and >= 0");
    }
  }
  if (!(a.back() >= 0.0)) {
    throw Error(ErrorKind::NegativeValue, "final buy price must be >= 0");
  }

  double z = 0.0;
  if (randomized) z = std::log1p(rng->uniform() * std::expm1(1.0));
  double paid = 0.0;
  double progress = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    double buy = a[j];
    if (buy <= 0.0) return paid + buy;
    if (randomized) {
      double step = std::isinf(buy) ? 0.0 : p[j] / buy;
      if (!std::isinf(buy) && progress + step >= z) return paid + buy;
      progress += step;
    } else if (!std::isinf(buy) && paid + p[j] >= buy) {
      return paid + buy;
    }
    paid += p[j];
  }
  return paid + a.back();
}

std::vector<double> ski_reduction(const std::vector<double>& values) {
  std::vector<double> a;
  a.reserve(values.size() + 1);
  a.push_back(kInf);
  double best = kInf;
  for (double v : values) {
    best = std::min(best, v);
    a.push_back(best);
  }
  return a;
}

}  // namespace pandora
