#include "pandora/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <memory>
#include <thread>
#include <utility>

#include "pandora/distribution.hpp"
#include "pandora/errors.hpp"
#include "pandora/rng.hpp"

namespace pandora {

namespace {

constexpr double kZ95 = 1.959963984540054;
constexpr std::int64_t kNodeBudget = 10000000;
constexpr std::int64_t kBlockTrials = 4096;

double net_of(const VariantSpec& variant, double value, double payments) {
  return variant.objective == Objective::Min ? value + payments
                                             : value - payments;
}

bool improves(const VariantSpec& variant, double v, int i, double best_v,
              int best_i) {
  if (best_i < 0) return true;
  if (variant.objective == Objective::Min) {
    return v < best_v || (v == best_v && i < best_i);
  }
  return v > best_v || (v == best_v && i < best_i);
}

struct RealizationCursor : ValueCursor {
  const std::vector<double>* values = nullptr;
  double value(std::size_t i) override { return (*values)[i]; }
};

// Values drawn on first access, materialized strictly in arrival order so
// the draw sequence never depends on the policy's access pattern.
struct LazySource : ValueCursor {
  const Instance* inst = nullptr;
  SplitMix64* rng = nullptr;
  std::vector<double> cache;
  std::size_t filled = 0;

  void bind(const Instance& instance) {
    inst = &instance;
    cache.assign(instance.n(), 0.0);
  }
  void start_trial(SplitMix64* stream) {
    rng = stream;
    filled = 0;
  }
  double value(std::size_t i) override {
    while (filled <= i) {
      cache[filled] = sample(inst->boxes[filled].dist, rng->uniform());
      ++filled;
    }
    return cache[i];
  }
  void materialize_all() {
    if (!cache.empty()) value(cache.size() - 1);
  }
};

// Referee with reusable buffers. Cleanup after a run touches only the boxes
// that were opened, so short trials on huge instances stay cheap.
class Referee {
 public:
  void bind(const Instance& instance) {
    inst_ = &instance;
    st_.instance = &instance;
    st_.is_open.assign(instance.n(), 0);
    revealed_.assign(instance.n(), 0.0);
    touched_.clear();
    reset_aggregates();
  }

  // The caller prepares the policy (begin_trial, observe_multiset); this
  // only steps decide() and enforces legality.
  double run(Policy& policy, ValueCursor& src, Trace* record) {
    const VariantSpec& variant = inst_->variant;
    const int n = static_cast<int>(inst_->n());
    double net = 0.0;
    while (true) {
      if (st_.opened_count == n) {
        int sel = variant.commitment ? st_.last_index : st_.best_index;
        double val = variant.commitment ? st_.last_value : st_.best_value;
        net = net_of(variant, val, st_.payments);
        if (record) {
          record->actions.push_back(Action::stop(sel));
          record->selected_index = sel;
          record->selected_value = val;
        }
        break;
      }
      Action act = policy.decide(st_);
      if (record) record->actions.push_back(act);
      if (act.kind == Action::Kind::Open) {
        apply_open(act.index, src, record != nullptr);
      } else {
        int sel = act.index;
        if (st_.opened_count == 0) {
          throw Error(ErrorKind::IllegalAction,
                      "cannot select before opening a box");
        }
        if (sel < 0 || sel >= n || !st_.is_open[static_cast<std::size_t>(sel)]) {
          throw Error(ErrorKind::IllegalAction,
                      "can only select an opened box");
        }
        if (variant.commitment && sel != st_.last_index) {
          throw Error(ErrorKind::IllegalAction,
                      "commitment allows selecting only the last opened box");
        }
        double val = revealed_[static_cast<std::size_t>(sel)];
        net = net_of(variant, val, st_.payments);
        if (record) {
          record->selected_index = sel;
          record->selected_value = val;
        }
        break;
      }
    }
    if (record) {
      record->payments = st_.payments;
      record->net = net;
    }
    for (int i : touched_) st_.is_open[static_cast<std::size_t>(i)] = 0;
    touched_.clear();
    reset_aggregates();
    return net;
  }

 private:
  void reset_aggregates() {
    st_.opened.clear();
    st_.opened_count = 0;
    st_.next_arrival = 0;
    st_.payments = 0.0;
    st_.best_index = -1;
    st_.best_value = 0.0;
    st_.last_index = -1;
    st_.last_value = 0.0;
  }

  void apply_open(int i, ValueCursor& src, bool recording) {
    const VariantSpec& variant = inst_->variant;
    const int n = static_cast<int>(inst_->n());
    if (i < 0 || i >= n || st_.is_open[static_cast<std::size_t>(i)]) {
      throw Error(ErrorKind::IllegalAction, "box is not available to open");
    }
    if (!variant.order_selection && i != st_.next_arrival) {
      throw Error(ErrorKind::IllegalAction,
                  "boxes arrive in a fixed order here");
    }
    st_.payments += inst_->boxes[static_cast<std::size_t>(i)].cost;
    double v = src.value(static_cast<std::size_t>(i));
    revealed_[static_cast<std::size_t>(i)] = v;
    st_.is_open[static_cast<std::size_t>(i)] = 1;
    touched_.push_back(i);
    ++st_.opened_count;
    if (recording) st_.opened.emplace_back(i, v);
    if (improves(variant, v, i, st_.best_value, st_.best_index)) {
      st_.best_index = i;
      st_.best_value = v;
    }
    st_.last_index = i;
    st_.last_value = v;
    while (st_.next_arrival < n &&
           st_.is_open[static_cast<std::size_t>(st_.next_arrival)]) {
      ++st_.next_arrival;
    }
  }

  const Instance* inst_ = nullptr;
  PolicyState st_;
  std::vector<double> revealed_;
  std::vector<int> touched_;
};

// Exact expectation by walking the policy's decision tree, branching over
// the reveal outcomes of each box it opens. Unopened boxes marginalize out,
// so early-stopping policies stay exact far beyond full enumeration.
class TraceTree {
 public:
  TraceTree(Policy& policy, const Instance& instance)
      : pol_(&policy), inst_(&instance) {
    st_.instance = &instance;
    st_.is_open.assign(instance.n(), 0);
    revealed_.assign(instance.n(), 0.0);
  }

  double value() {
    go(1.0L);
    return static_cast<double>(acc_.value());
  }

 private:
  void go(long double prob) {
    const VariantSpec& variant = inst_->variant;
    const int n = static_cast<int>(inst_->n());
    if (st_.opened_count == n) {
      double val = variant.commitment ? st_.last_value : st_.best_value;
      acc_.add(prob * net_of(variant, val, st_.payments));
      return;
    }
    if (++nodes_ > kNodeBudget) {
      throw Error(ErrorKind::StateSpaceTooLarge,
                  "decision tree exceeds the node budget");
    }
    Action act = pol_->decide(st_);
    if (act.kind == Action::Kind::StopSelect) {
      int sel = act.index;
      if (st_.opened_count == 0 || sel < 0 || sel >= n ||
          !st_.is_open[static_cast<std::size_t>(sel)] ||
          (variant.commitment && sel != st_.last_index)) {
        throw Error(ErrorKind::IllegalAction, "illegal selection");
      }
      double val = revealed_[static_cast<std::size_t>(sel)];
      acc_.add(prob * net_of(variant, val, st_.payments));
      return;
    }
    int i = act.index;
    if (i < 0 || i >= n || st_.is_open[static_cast<std::size_t>(i)] ||
        (!variant.order_selection && i != st_.next_arrival)) {
      throw Error(ErrorKind::IllegalAction, "illegal open");
    }

    const double save_pay = st_.payments;
    const int save_bi = st_.best_index;
    const double save_bv = st_.best_value;
    const int save_li = st_.last_index;
    const double save_lv = st_.last_value;
    const int save_na = st_.next_arrival;
    const int save_oc = st_.opened_count;

    st_.is_open[static_cast<std::size_t>(i)] = 1;
    st_.opened_count = save_oc + 1;
    st_.payments = save_pay + inst_->boxes[static_cast<std::size_t>(i)].cost;
    int na = save_na;
    while (na < n && st_.is_open[static_cast<std::size_t>(na)]) ++na;
    st_.next_arrival = na;

    const DiscreteDistribution& dist =
        inst_->boxes[static_cast<std::size_t>(i)].dist;
    for (std::size_t j = 0; j < dist.values.size(); ++j) {
      double v = dist.values[j];
      revealed_[static_cast<std::size_t>(i)] = v;
      st_.last_index = i;
      st_.last_value = v;
      if (improves(inst_->variant, v, i, save_bv, save_bi)) {
        st_.best_index = i;
        st_.best_value = v;
      } else {
        st_.best_index = save_bi;
        st_.best_value = save_bv;
      }
      go(prob * dist.probs[j]);
    }

    st_.is_open[static_cast<std::size_t>(i)] = 0;
    st_.opened_count = save_oc;
    st_.payments = save_pay;
    st_.next_arrival = save_na;
    st_.best_index = save_bi;
    st_.best_value = save_bv;
    st_.last_index = save_li;
    st_.last_value = save_lv;
  }

  Policy* pol_;
  const Instance* inst_;
  PolicyState st_;
  std::vector<double> revealed_;
  std::int64_t nodes_ = 0;
  Neumaier acc_;
};

double enumerate_outcomes(Policy& policy, const Instance& instance) {
  const std::size_t n = instance.n();
  long double combos = 1.0L;
  for (const auto& box : instance.boxes) {
    combos *= static_cast<long double>(box.dist.size());
    if (combos > static_cast<long double>(kNodeBudget)) {
      throw Error(ErrorKind::StateSpaceTooLarge,
                  "outcome product exceeds the enumeration budget");
    }
  }
  Referee ref;
  ref.bind(instance);
  RealizationCursor cur;
  std::vector<double> real(n, 0.0);
  cur.values = &real;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> sorted(n, 0.0);
  Neumaier acc;
  while (true) {
    long double prob = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& d = instance.boxes[i].dist;
      real[i] = d.values[idx[i]];
      prob *= static_cast<long double>(d.probs[idx[i]]);
    }
    sorted = real;
    std::sort(sorted.begin(), sorted.end());
    policy.observe_multiset(sorted);
    policy.begin_trial(nullptr);
    acc.add(prob * ref.run(policy, cur, nullptr));

    std::size_t d = n;
    while (d > 0) {
      --d;
      if (++idx[d] < instance.boxes[d].dist.size()) break;
      idx[d] = 0;
      if (d == 0) return static_cast<double>(acc.value());
    }
  }
}

// Per-box offset against which the benchmark nets a value: all costs up to
// the box in arrival order, its own cost alone under order selection, zero
// without costs.
std::vector<double> prophet_offsets(const Instance& instance) {
  std::vector<double> off(instance.n(), 0.0);
  if (!instance.variant.observation_cost) return off;
  if (instance.variant.order_selection) {
    for (std::size_t i = 0; i < instance.n(); ++i) {
      off[i] = instance.boxes[i].cost;
    }
    return off;
  }
  double paid = 0.0;
  for (std::size_t i = 0; i < instance.n(); ++i) {
    paid += instance.boxes[i].cost;
    off[i] = paid;
  }
  return off;
}

double exact_prophet_value(const Instance& instance) {
  const std::size_t n = instance.n();
  const bool minimize = instance.variant.objective == Objective::Min;
  std::vector<double> off = prophet_offsets(instance);

  std::size_t cand_count = 0;
  for (const auto& box : instance.boxes) cand_count += box.dist.size();
  if (cand_count > 100000 ||
      static_cast<long double>(cand_count) * static_cast<long double>(n) >
          2e8L) {
    throw Error(ErrorKind::StateSpaceTooLarge,
                "too many benchmark candidates for an exact sweep");
  }

  // Candidate nets per box, plus cumulative probability from the side the
  // survival product needs.
  std::vector<std::vector<double>> nets(n);
  std::vector<std::vector<long double>> weight(n);
  std::vector<double> all;
  all.reserve(cand_count);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& d = instance.boxes[i].dist;
    nets[i].resize(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) {
      nets[i][j] = minimize ? d.values[j] + off[i] : d.values[j] - off[i];
      all.push_back(nets[i][j]);
    }
    weight[i].assign(d.size() + 1, 0.0L);
    if (minimize) {
      // weight[i][k] = P(net > nets[i][k-1]) via suffix sums
      for (std::size_t j = d.size(); j-- > 0;) {
        weight[i][j] = weight[i][j + 1] + static_cast<long double>(d.probs[j]);
      }
    } else {
      // weight[i][k] = P(net <= nets[i][k-1]) via prefix sums
      for (std::size_t j = 0; j < d.size(); ++j) {
        weight[i][j + 1] = weight[i][j] + static_cast<long double>(d.probs[j]);
      }
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  Neumaier acc;
  long double prev = minimize ? 1.0L : 0.0L;
  for (double z : all) {
    long double cur = 1.0L;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& ni = nets[i];
      std::size_t k = static_cast<std::size_t>(
          std::upper_bound(ni.begin(), ni.end(), z) - ni.begin());
      // suffix mass beyond k for Min, prefix mass up to k for Max
      cur *= weight[i][k];
      if (cur == 0.0L) break;
    }
    long double mass = minimize ? prev - cur : cur - prev;
    acc.add(static_cast<long double>(z) * mass);
    prev = cur;
  }
  return static_cast<double>(acc.value());
}

struct BlockStat {
  Neumaier sx, sy, sxx, syy, sxy;
  std::int64_t dominance = 0;
  std::int64_t equal = 0;
};

}  // namespace

Trace run_trace(Policy& policy, const Instance& instance,
                const std::vector<double>& realization) {
  instance.validate();
  if (realization.size() != instance.n()) {
    throw Error(ErrorKind::LengthMismatch,
                "realization needs one value per box");
  }
  Referee ref;
  ref.bind(instance);
  RealizationCursor cur;
  cur.values = &realization;
  Trace tr;
  ref.run(policy, cur, &tr);
  return tr;
}

double exact_eval(Policy& prototype, const Instance& instance) {
  instance.validate();
  if (prototype.randomized()) {
    throw Error(ErrorKind::RandomizedPolicyUnsupported,
                "exact evaluation covers deterministic policies only");
  }
  auto pol = prototype.clone();
  if (pol->needs_realization()) {
    return enumerate_outcomes(*pol, instance);
  }
  pol->begin_trial(nullptr);
  TraceTree tree(*pol, instance);
  return tree.value();
}

double exact_oracle_value(const Instance& instance, OracleKind oracle) {
  instance.validate();
  switch (oracle) {
    case OracleKind::Prophet:
      return exact_prophet_value(instance);
    case OracleKind::WeakProphet: {
      WeakProphetPolicy pol(instance);
      return exact_eval(pol, instance);
    }
    case OracleKind::DpOptimal:
      return dp_optimal_value(instance).value;
  }
  throw Error(ErrorKind::Usage, "unknown oracle");
}

DPResult dp_optimal_value(const Instance& instance) {
  instance.validate();
  const VariantSpec& variant = instance.variant;
  const int n = static_cast<int>(instance.n());
  const bool minimize = variant.objective == Objective::Min;
  if (variant.order_selection ? n > 12 : n > 25) {
    throw Error(ErrorKind::StateSpaceTooLarge,
                "instance too large for the dynamic program");
  }

  std::vector<double> dom;
  for (const auto& box : instance.boxes) {
    dom.insert(dom.end(), box.dist.values.begin(), box.dist.values.end());
  }
  std::sort(dom.begin(), dom.end());
  dom.erase(std::unique(dom.begin(), dom.end()), dom.end());
  const std::size_t m1 = dom.size() + 1;

  DPResult res;
  res.objective = variant.objective;
  res.order_selection = variant.order_selection;
  res.commitment = variant.commitment;
  res.stride = m1;
  res.carried_domain.assign(m1, std::numeric_limits<double>::quiet_NaN());
  std::copy(dom.begin(), dom.end(), res.carried_domain.begin() + 1);

  auto rank_of = [&](double v) {
    return 1 + static_cast<std::size_t>(
                   std::lower_bound(dom.begin(), dom.end(), v) - dom.begin());
  };
  auto carried_at = [&](std::size_t r) { return dom[r - 1]; };
  auto child_rank = [&](std::size_t r, double v) {
    if (variant.commitment || r == 0) return rank_of(v);
    double carr = carried_at(r);
    double merged = minimize ? std::min(carr, v) : std::max(carr, v);
    return rank_of(merged);
  };
  auto pick_stop = [&](long double stop_val, long double open_val) {
    // Ties open: stopping must be strictly better.
    return minimize ? stop_val < open_val : stop_val > open_val;
  };

  if (!variant.order_selection) {
    std::vector<long double> next(m1, 0.0L), cur(m1, 0.0L);
    res.table.assign((static_cast<std::size_t>(n) + 1) * m1, DPResult::kDpStop);
    for (std::size_t r = 1; r < m1; ++r) next[r] = carried_at(r);
    for (int t = n - 1; t >= 0; --t) {
      const Box& box = instance.boxes[static_cast<std::size_t>(t)];
      for (std::size_t r = 0; r < m1; ++r) {
        long double exp = 0.0L;
        for (std::size_t j = 0; j < box.dist.size(); ++j) {
          exp += static_cast<long double>(box.dist.probs[j]) *
                 next[child_rank(r, box.dist.values[j])];
        }
        long double open_val = minimize ? box.cost + exp : exp - box.cost;
        std::size_t cell = static_cast<std::size_t>(t) * m1 + r;
        if (t >= 1 && r >= 1 && pick_stop(carried_at(r), open_val)) {
          cur[r] = carried_at(r);
          res.table[cell] = DPResult::kDpStop;
        } else {
          cur[r] = open_val;
          res.table[cell] = DPResult::kDpOpenNext;
        }
      }
      std::swap(cur, next);
    }
    res.value = static_cast<double>(next[0]);
    return res;
  }

  const std::size_t masks = std::size_t{1} << n;
  std::vector<long double> val(masks * m1, 0.0L);
  res.table.assign(masks * m1, DPResult::kDpStop);
  for (std::size_t mask = masks; mask-- > 0;) {
    for (std::size_t r = 0; r < m1; ++r) {
      std::size_t cell = mask * m1 + r;
      if (mask + 1 == masks) {
        val[cell] = r >= 1 ? carried_at(r) : 0.0L;
        continue;
      }
      long double best_open = 0.0L;
      std::int32_t best_box = -1;
      for (int i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) continue;
        const Box& box = instance.boxes[static_cast<std::size_t>(i)];
        long double exp = 0.0L;
        std::size_t child = mask | (std::size_t{1} << i);
        for (std::size_t j = 0; j < box.dist.size(); ++j) {
          exp += static_cast<long double>(box.dist.probs[j]) *
                 val[child * m1 + child_rank(r, box.dist.values[j])];
        }
        long double open_val = minimize ? box.cost + exp : exp - box.cost;
        if (best_box < 0 ||
            (minimize ? open_val < best_open : open_val > best_open)) {
          best_open = open_val;
          best_box = i;
        }
      }
      if (mask != 0 && r >= 1 && pick_stop(carried_at(r), best_open)) {
        val[cell] = carried_at(r);
        res.table[cell] = DPResult::kDpStop;
      } else {
        val[cell] = best_open;
        res.table[cell] = best_box;
      }
    }
  }
  res.value = static_cast<double>(val[0]);
  return res;
}

DpPolicy::DpPolicy(const Instance& instance)
    : dp_(std::make_shared<const DPResult>(dp_optimal_value(instance))) {}

Action DpPolicy::decide(const PolicyState& state) {
  const DPResult& dp = *dp_;
  std::size_t major;
  if (dp.order_selection) {
    std::size_t mask = 0;
    for (std::size_t i = 0; i < state.is_open.size(); ++i) {
      if (state.is_open[i]) mask |= std::size_t{1} << i;
    }
    major = mask;
  } else {
    major = static_cast<std::size_t>(state.opened_count);
  }
  std::size_t rank = 0;
  if (state.opened_count > 0) {
    double carried = dp.commitment ? state.last_value : state.best_value;
    rank = 1 + static_cast<std::size_t>(
                   std::lower_bound(dp.carried_domain.begin() + 1,
                                    dp.carried_domain.end(), carried) -
                   (dp.carried_domain.begin() + 1));
  }
  std::int32_t entry = dp.entry(major, rank);
  if (entry == DPResult::kDpStop) {
    return Action::stop(dp.commitment ? state.last_index : state.best_index);
  }
  if (entry == DPResult::kDpOpenNext) return Action::open(state.next_arrival);
  return Action::open(entry);
}

std::unique_ptr<Policy> DpPolicy::clone() const {
  return std::make_unique<DpPolicy>(*this);
}

McResult monte_carlo(const Policy& prototype, const Instance& instance,
                     OracleKind oracle, std::int64_t trials,
                     std::uint64_t seed, int threads) {
  instance.validate();
  if (trials <= 0) throw Error(ErrorKind::Usage, "need at least one trial");
  const std::size_t n = instance.n();
  const VariantSpec& variant = instance.variant;
  const bool minimize = variant.objective == Objective::Min;
  const bool against_prophet = oracle == OracleKind::Prophet;

  std::unique_ptr<Policy> oracle_proto;
  if (oracle == OracleKind::WeakProphet) {
    oracle_proto = std::make_unique<WeakProphetPolicy>(instance);
  } else if (oracle == OracleKind::DpOptimal) {
    oracle_proto = std::make_unique<DpPolicy>(instance);
  }
  std::vector<double> costs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) costs[i] = instance.boxes[i].cost;

  const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<BlockStat> stats(static_cast<std::size_t>(blocks));

  auto worker = [&](std::int64_t first_block, std::int64_t step) {
    auto pol = prototype.clone();
    std::unique_ptr<Policy> opol =
        oracle_proto ? oracle_proto->clone() : nullptr;
    Referee ref;
    ref.bind(instance);
    LazySource src;
    src.bind(instance);
    std::vector<double> sorted;
    for (std::int64_t b = first_block; b < blocks; b += step) {
      BlockStat& s = stats[static_cast<std::size_t>(b)];
      const std::int64_t lo = b * kBlockTrials;
      const std::int64_t hi = std::min(trials, lo + kBlockTrials);
      for (std::int64_t t = lo; t < hi; ++t) {
        SplitMix64 lane0 = substream(seed, static_cast<std::uint64_t>(t), 0);
        SplitMix64 lane1 = substream(seed, static_cast<std::uint64_t>(t), 1);
        src.start_trial(&lane0);
        if (pol->needs_realization()) {
          src.materialize_all();
          sorted = src.cache;
          std::sort(sorted.begin(), sorted.end());
          pol->observe_multiset(sorted);
        }
        pol->begin_trial(&lane1);
        double x = ref.run(*pol, src, nullptr);
        double y;
        if (against_prophet) {
          y = prophet_payoff_lazy(variant, costs, src, n);
        } else {
          src.materialize_all();
          if (opol->needs_realization()) {
            sorted = src.cache;
            std::sort(sorted.begin(), sorted.end());
            opol->observe_multiset(sorted);
          }
          opol->begin_trial(nullptr);
          y = ref.run(*opol, src, nullptr);
        }
        s.sx.add(x);
        s.sy.add(y);
        s.sxx.add(static_cast<long double>(x) * x);
        s.syy.add(static_cast<long double>(y) * y);
        s.sxy.add(static_cast<long double>(x) * y);
        if (x == y) {
          ++s.equal;
        } else if (against_prophet && (minimize ? x < y : x > y)) {
          ++s.dominance;
        }
      }
    }
  };

  int workers = std::max(1, std::min<int>(threads, static_cast<int>(blocks)));
  if (workers == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          worker(w, workers);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  Neumaier sx, sy, sxx, syy, sxy;
  std::int64_t dominance = 0;
  std::int64_t equal = 0;
  for (const auto& s : stats) {
    sx.add(s.sx.value());
    sy.add(s.sy.value());
    sxx.add(s.sxx.value());
    syy.add(s.syy.value());
    sxy.add(s.sxy.value());
    dominance += s.dominance;
    equal += s.equal;
  }

  const long double N = static_cast<long double>(trials);
  const long double mx = sx.value() / N;
  const long double my = sy.value() / N;
  auto variance = [&](const Neumaier& sq, const Neumaier& lin) {
    if (trials < 2) return 0.0L;
    long double v =
        (sq.value() - lin.value() * lin.value() / N) / (N - 1.0L);
    return v < 0.0L ? 0.0L : v;
  };
  const long double vx = variance(sxx, sx);
  const long double vy = variance(syy, sy);
  const long double inf = std::numeric_limits<long double>::infinity();
  auto half_width = [&](long double v) {
    if (trials < 2) return std::numeric_limits<double>::infinity();
    return static_cast<double>(kZ95 * sqrtl(v / N));
  };

  McResult out;
  out.alg = Estimate{static_cast<double>(mx), half_width(vx), trials, seed};
  out.oracle = Estimate{static_cast<double>(my), half_width(vy), trials, seed};
  out.ratio = out.alg.mean / out.oracle.mean;
  long double cxy = trials < 2
                        ? 0.0L
                        : (sxy.value() - sx.value() * sy.value() / N) /
                              (N - 1.0L);
  long double var_ratio = inf;
  if (trials >= 2 && my != 0.0L) {
    long double r = mx / my;
    var_ratio = (vx - 2.0L * r * cxy + r * r * vy) / (my * my * N);
    if (var_ratio < 0.0L) var_ratio = 0.0L;
  }
  out.ratio_half_width = trials < 2 || my == 0.0L
                             ? std::numeric_limits<double>::infinity()
                             : static_cast<double>(kZ95 * sqrtl(var_ratio));
  out.dominance_violations = dominance;
  out.pathwise_equal = equal;
  return out;
}

namespace {

// Benchmark-only sampling for families without a showcased policy. Uses the
// same value lane as monte_carlo, so draws line up across reports.
Estimate sample_prophet_only(const Instance& instance, std::int64_t trials,
                             std::uint64_t seed) {
  const std::size_t n = instance.n();
  std::vector<double> costs(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) costs[i] = instance.boxes[i].cost;
  const std::int64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<std::pair<Neumaier, Neumaier>> stats(
      static_cast<std::size_t>(blocks));
  LazySource src;
  src.bind(instance);
  for (std::int64_t b = 0; b < blocks; ++b) {
    auto& s = stats[static_cast<std::size_t>(b)];
    const std::int64_t lo = b * kBlockTrials;
    const std::int64_t hi = std::min(trials, lo + kBlockTrials);
    for (std::int64_t t = lo; t < hi; ++t) {
      SplitMix64 lane0 = substream(seed, static_cast<std::uint64_t>(t), 0);
      src.start_trial(&lane0);
      double y = prophet_payoff_lazy(instance.variant, costs, src, n);
      s.first.add(y);
      s.second.add(static_cast<long double>(y) * y);
    }
  }
  Neumaier sy, syy;
  for (const auto& s : stats) {
    sy.add(s.first.value());
    syy.add(s.second.value());
  }
  const long double N = static_cast<long double>(trials);
  const long double my = sy.value() / N;
  double hw = std::numeric_limits<double>::infinity();
  if (trials >= 2) {
    long double v = (syy.value() - sy.value() * sy.value() / N) / (N - 1.0L);
    if (v < 0.0L) v = 0.0L;
    hw = static_cast<double>(kZ95 * sqrtl(v / N));
  }
  return Estimate{static_cast<double>(my), hw, trials, seed};
}

}  // namespace

std::vector<RatioRow> ratio_report(const std::string& family,
                                   const std::vector<std::int64_t>& n_list,
                                   std::int64_t trials, std::uint64_t seed,
                                   int threads, std::int64_t mc_max_n) {
  if (family != "tightness" && family != "example41" &&
      family != "example32") {
    throw Error(ErrorKind::Usage, "unknown family: " + family);
  }
  std::vector<RatioRow> rows;
  rows.reserve(n_list.size());
  for (std::int64_t n : n_list) {
    ClosedFormReport closed;
    if (family == "tightness") {
      closed = closed_form_tightness(n);
    } else if (family == "example41") {
      closed = closed_form_example41(n);
    } else {
      closed = closed_form_example32(n);
    }
    RatioRow row;
    row.family = family;
    row.n = n;
    row.prophet_exact = closed.prophet;
    row.alg_exact = closed.alg;
    row.ratio = closed.alg / closed.prophet;
    if (n <= mc_max_n) {
      if (family == "example32") {
        Instance inst = gen_example_max_cost(n, false, false);
        Estimate est = sample_prophet_only(inst, trials, seed);
        row.has_mc = true;
        row.prophet_mc = est.mean;
        row.annotation =
            "benchmark sampled only; the policy side is closed form";
      } else {
        Instance inst = family == "tightness"
                            ? gen_tightness_instance(n)
                            : gen_example_min_orderselect(n);
        WeitzmanPolicy pol(inst);
        McResult mc =
            monte_carlo(pol, inst, OracleKind::Prophet, trials, seed, threads);
        row.has_mc = true;
        row.has_alg_mc = true;
        row.has_ci = true;
        row.prophet_mc = mc.oracle.mean;
        row.alg_mc = mc.alg.mean;
        row.ratio = mc.ratio;
        row.ci = mc.ratio_half_width;
      }
    } else {
      row.annotation = "closed forms only above the sampling cap";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pandora
