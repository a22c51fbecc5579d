#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "pandora/model.hpp"
#include "pandora/rng.hpp"

namespace pandora {

struct Action {
  enum class Kind { Open, StopSelect };
  Kind kind = Kind::Open;
  int index = -1;

  static Action open(int i) { return Action{Kind::Open, i}; }
  static Action stop(int i) { return Action{Kind::StopSelect, i}; }
  bool operator==(const Action&) const = default;
};

// Read-only view of a run in progress, maintained by the referee. The
// aggregates (payments, best, last) are kept current so policies never scan.
struct PolicyState {
  const Instance* instance = nullptr;
  // (box index, revealed value) in opening order. Populated only when the
  // referee records a trace; the aggregates below are always current.
  std::vector<std::pair<int, double>> opened;
  std::vector<char> is_open;
  int opened_count = 0;
  int next_arrival = 0;
  double payments = 0.0;
  // Running argmin (Min) or argmax (Max) over revealed values, lowest index
  // on ties.
  int best_index = -1;
  double best_value = 0.0;
  int last_index = -1;
  double last_value = 0.0;

  std::size_t n() const { return instance->n(); }
  int remaining() const { return static_cast<int>(n()) - opened_count; }
};

// Decision rule driven by the referee. Deterministic policies must derive
// every decision from the state alone so exact evaluation can branch over
// reveal outcomes; per-trial mutable internals are allowed only behind
// randomized() or needs_realization().
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string_view name() const = 0;
  virtual bool randomized() const { return false; }
  virtual bool needs_realization() const { return false; }
  // rng is the per-trial policy stream; null when the caller guarantees the
  // policy draws nothing (exact evaluation).
  virtual void begin_trial(SplitMix64* rng) { (void)rng; }
  virtual void observe_multiset(const std::vector<double>& sorted_values) {
    (void)sorted_values;
  }
  virtual Action decide(const PolicyState& state) = 0;
  virtual std::unique_ptr<Policy> clone() const = 0;
};

// Index rule: open boxes by nondecreasing reservation value, stop as soon as
// the best value seen beats the next index (strictly; ties keep opening).
// With a fixed arrival order the same stopping rule is applied against the
// next arriving box instead.
class WeitzmanPolicy : public Policy {
 public:
  explicit WeitzmanPolicy(const Instance& instance);
  std::string_view name() const override { return "weitzman"; }
  Action decide(const PolicyState& state) override;
  std::unique_ptr<Policy> clone() const override;

  double sigma(int box) const { return sigma_[static_cast<std::size_t>(box)]; }

 private:
  std::vector<double> sigma_;
  std::vector<int> order_;  // opening order (by sigma, or arrival)
};

// Rent-or-buy rule on the reduced sequence a_t = min value revealed so far,
// with the next box's opening cost as the rent. The randomized variant draws
// one threshold per trial; the deterministic variant buys at break-even and
// is the factor-2 baseline.
class SkiRentalPolicy : public Policy {
 public:
  SkiRentalPolicy(const Instance& instance, bool randomized);
  std::string_view name() const override {
    return randomized_ ? "ski-rental" : "ski-rental-deterministic";
  }
  bool randomized() const override { return randomized_; }
  void begin_trial(SplitMix64* rng) override;
  Action decide(const PolicyState& state) override;
  std::unique_ptr<Policy> clone() const override;

 private:
  bool randomized_ = true;
  double z_ = 0.0;         // buy threshold for this trial
  double progress_ = 0.0;  // accumulated rent/buy-price mass
};

// Single-threshold stopping under commitment: accept the first value >= tau,
// forced onto the last box otherwise. Default tau is half_max_threshold,
// which carries the unconditional factor-1/2 guarantee.
class ThresholdPolicy : public Policy {
 public:
  ThresholdPolicy(const Instance& instance, std::optional<double> tau = {});
  std::string_view name() const override { return "threshold"; }
  Action decide(const PolicyState& state) override;
  std::unique_ptr<Policy> clone() const override;

  double tau() const { return tau_; }

 private:
  double tau_ = 0.0;
};

// Opens every box, then the referee's forced terminal selection takes the
// best revealed value. Matches the full-information benchmark pathwise on
// cost-free variants.
class OpenAllPolicy : public Policy {
 public:
  explicit OpenAllPolicy(const Instance& instance);
  std::string_view name() const override { return "open-all"; }
  Action decide(const PolicyState& state) override;
  std::unique_ptr<Policy> clone() const override;
};

// Smallest support point of max_i X_i whose upper-tail probability is at most
// 1/2; falls back to the largest support point when every tail exceeds 1/2.
// On discrete supports the factor-1/2 bound can fail with this tau (a sure
// middling box killed by a long-shot top atom), so it is not the default.
double median_threshold(const Instance& instance);

// Half the expected maximum. Accepting the first value at or above this
// earns at least half the expected maximum for any independent nonnegative
// boxes, with no tie-breaking caveats.
double half_max_threshold(const Instance& instance);

// Rent-or-buy over an explicit price sequence. a has one more entry than p:
// a[j] is the buy price when j rents were paid, p[j] the j-th rent. Returns
// the total paid (rents plus the final buy). The randomized variant needs a
// stream; pass null for the deterministic one.
double db_ski_run(const std::vector<double>& a, const std::vector<double>& p,
                  bool randomized, SplitMix64* rng);

// Buy-price sequence induced by a value realization: infinity first (a run
// cannot stop before opening anything), then the running minimum.
std::vector<double> ski_reduction(const std::vector<double>& values);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace pandora
