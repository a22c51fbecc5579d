#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pandora/model.hpp"
#include "pandora/oracles.hpp"
#include "pandora/policies.hpp"

namespace pandora {

enum class OracleKind { Prophet, WeakProphet, DpOptimal };

struct Trace {
  std::vector<Action> actions;
  double payments = 0.0;
  int selected_index = -1;
  double selected_value = 0.0;
  // Max: value - payments; Min: value + payments.
  double net = 0.0;
};

// Steps the policy against one realization, enforcing action legality
// (arrival order, unopened targets, commitment, nonempty selection) and the
// forced terminal selection once every box is open.
Trace run_trace(Policy& policy, const Instance& instance,
                const std::vector<double>& realization);

// Exact expected net of a deterministic policy: branches over reveal
// outcomes, pruning along the policy's actual decision tree, so instances
// far beyond full product enumeration stay exact when the policy stops
// early. Multiset-informed policies are evaluated by full enumeration
// instead. Both paths share a 1e7 node budget.
double exact_eval(Policy& prototype, const Instance& instance);

// Exact expected benchmark value via a forward distribution sweep over the
// running best (prophet), or via the corresponding exact policy evaluation.
double exact_oracle_value(const Instance& instance, OracleKind oracle);

struct DPResult {
  double value = 0.0;
  Objective objective = Objective::Min;
  bool order_selection = false;
  bool commitment = false;
  // Carried-value axis: rank 0 is the nothing-opened sentinel, ranks 1.. are
  // the sorted union of support values.
  std::vector<double> carried_domain;
  // Optimal action per state, laid out as state_major * stride + rank.
  // Fixed order: state_major is the count of opened boxes; order selection:
  // the opened-set bitmask. Entries: kDpOpenNext opens the arrival-order
  // box, kDpStop selects the carried value, i >= 0 opens box i.
  std::vector<std::int32_t> table;
  std::size_t stride = 0;

  static constexpr std::int32_t kDpOpenNext = -1;
  static constexpr std::int32_t kDpStop = -2;

  std::int32_t entry(std::size_t state_major, std::size_t rank) const {
    return table[state_major * stride + rank];
  }
};

// Backward induction over (opened prefix or subset, carried value) states.
// The carried value is the running best, or the last reveal under
// commitment. Ties prefer opening.
DPResult dp_optimal_value(const Instance& instance);

// Replays a solved table as an online policy.
class DpPolicy : public Policy {
 public:
  explicit DpPolicy(const Instance& instance);
  std::string_view name() const override { return "dp-optimal"; }
  Action decide(const PolicyState& state) override;
  std::unique_ptr<Policy> clone() const override;

 private:
  std::shared_ptr<const DPResult> dp_;
};

struct Estimate {
  double mean = 0.0;
  double half_width = 0.0;  // 95% normal CI half width; +inf for one trial
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

struct McResult {
  Estimate alg;
  Estimate oracle;
  double ratio = 0.0;             // of means, alg over oracle
  double ratio_half_width = 0.0;  // delta method on the paired samples
  std::int64_t dominance_violations = 0;  // prophet-beating trials (must be 0)
  std::int64_t pathwise_equal = 0;        // trials with alg == oracle exactly
};

// Paired evaluation under common random numbers: every trial realizes values
// from a counter-based substream of (seed, trial), and both sides see the
// same realization. Results are bit-identical for any worker count.
McResult monte_carlo(const Policy& prototype, const Instance& instance,
                     OracleKind oracle, std::int64_t trials,
                     std::uint64_t seed, int threads = 1);

struct RatioRow {
  std::string family;
  std::int64_t n = 0;
  double prophet_exact = 0.0;
  double alg_exact = 0.0;
  bool has_mc = false;
  bool has_alg_mc = false;  // example32 samples the benchmark only
  double prophet_mc = 0.0;
  double alg_mc = 0.0;
  double ratio = 0.0;  // MC ratio when sampled, closed-form otherwise
  bool has_ci = false;
  double ci = 0.0;
  std::string annotation;
};

// Closed forms for every n, Monte Carlo up to mc_max_n boxes. Families:
// tightness and example41 pair the index policy against the prophet;
// example32 has no showcased policy, so only the benchmark is sampled.
std::vector<RatioRow> ratio_report(const std::string& family,
                                   const std::vector<std::int64_t>& n_list,
                                   std::int64_t trials, std::uint64_t seed,
                                   int threads = 1,
                                   std::int64_t mc_max_n = 10000);

}  // namespace pandora
