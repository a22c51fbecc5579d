#include "pandora/registry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "pandora/distribution.hpp"
#include "pandora/engine.hpp"
#include "pandora/errors.hpp"
#include "pandora/policies.hpp"
#include "pandora/render.hpp"
#include "pandora/rng.hpp"

namespace pandora {

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

double euler_ratio() { return std::exp(1.0) / (std::exp(1.0) - 1.0); }

VariantCell make_cell(VariantSpec variant, StatusKind status, double lo,
                      double hi, std::string label, std::string citation,
                      std::optional<DemoSpec> demo) {
  VariantCell c;
  c.variant = variant;
  c.status = status;
  c.lo = lo;
  c.hi = hi;
  c.label = std::move(label);
  c.citation = std::move(citation);
  c.demo = std::move(demo);
  return c;
}

}  // namespace

const std::vector<VariantCell>& registry_cells() {
  static const std::vector<VariantCell> cells = [] {
    const std::string max_cost_cite = "see demo (max-cost family)";
    const std::string trivial_cite = "trivial (open everything)";
    const std::string commit_inf_cite = "Livanos & Mehta 2022, App. B.1";
    const DemoSpec ex32{"example32", "dp-optimal", "prophet"};
    const DemoSpec triv_max{"random-nocost-max", "open-all", "prophet"};
    const DemoSpec triv_min{"random-nocost-min", "open-all", "prophet"};

    std::vector<VariantCell> c;
    c.reserve(16);
    // maximization, commitment yes
    c.push_back(make_cell({Objective::Max, true, true, true},
                          StatusKind::UnboundedBad, -kInfD, -kInfD, "-inf",
                          max_cost_cite, ex32));
    c.push_back(make_cell({Objective::Max, true, false, true},
                          StatusKind::KnownRange, 0.726, 0.745,
                          "[0.726, 0.745]",
                          "Bubna & Chiplunkar 2022; Correa et al. 2017", {}));
    c.push_back(make_cell({Objective::Max, true, true, false},
                          StatusKind::UnboundedBad, -kInfD, -kInfD, "-inf",
                          "Samuel 1992; see demo", ex32));
    c.push_back(make_cell(
        {Objective::Max, true, false, false}, StatusKind::KnownRatio, 0.5, 0.5,
        "1/2", "Krengel & Sucheston 1978",
        DemoSpec{"random-nocost-max-commit", "threshold", "prophet"}));
    // maximization, commitment no
    c.push_back(make_cell({Objective::Max, false, true, true},
                          StatusKind::UnboundedBad, -kInfD, -kInfD, "-inf",
                          max_cost_cite, ex32));
    c.push_back(make_cell({Objective::Max, false, false, true},
                          StatusKind::Trivial1, 1.0, 1.0, "1", trivial_cite,
                          triv_max));
    c.push_back(make_cell({Objective::Max, false, true, false},
                          StatusKind::UnboundedBad, -kInfD, -kInfD, "-inf",
                          max_cost_cite, ex32));
    c.push_back(make_cell({Objective::Max, false, false, false},
                          StatusKind::Trivial1, 1.0, 1.0, "1", trivial_cite,
                          triv_max));
    // minimization, commitment yes: recall is essential, nothing here to run
    c.push_back(make_cell({Objective::Min, true, true, true},
                          StatusKind::UnboundedBad, kInfD, kInfD, "inf",
                          commit_inf_cite, {}));
    c.push_back(make_cell({Objective::Min, true, false, true},
                          StatusKind::UnboundedBad, kInfD, kInfD, "inf",
                          commit_inf_cite, {}));
    c.push_back(make_cell({Objective::Min, true, true, false},
                          StatusKind::UnboundedBad, kInfD, kInfD, "inf",
                          commit_inf_cite, {}));
    c.push_back(make_cell({Objective::Min, true, false, false},
                          StatusKind::UnboundedBad, kInfD, kInfD, "inf",
                          commit_inf_cite, {}));
    // minimization, commitment no
    c.push_back(make_cell({Objective::Min, false, true, true},
                          StatusKind::UnboundedBad, kInfD, kInfD, "inf",
                          "Weitzman 1979; see demo",
                          DemoSpec{"example41", "weitzman", "prophet"}));
    c.push_back(make_cell({Objective::Min, false, false, true},
                          StatusKind::Trivial1, 1.0, 1.0, "1", trivial_cite,
                          triv_min));
    c.push_back(make_cell(
        {Objective::Min, false, true, false}, StatusKind::KnownRatio,
        euler_ratio(), euler_ratio(), "1.58*",
        "ski-rental reduction; Karlin et al. 1990; Chawla et al. 2020",
        DemoSpec{"tightness", "ski-rental", "prophet"}));
    c.push_back(make_cell({Objective::Min, false, false, false},
                          StatusKind::Trivial1, 1.0, 1.0, "1", trivial_cite,
                          triv_min));
    return c;
  }();
  return cells;
}

const std::vector<std::string>& known_families() {
  static const std::vector<std::string> families = {
      "tightness",
      "example41",
      "example32",
      "random-nocost-max",
      "random-nocost-max-commit",
      "random-nocost-min"};
  return families;
}

Instance random_no_cost_instance(Objective objective, bool commitment,
                                 bool order_selection, std::int64_t n,
                                 std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::Usage, "need at least one box");
  SplitMix64 rng = substream(seed, 0, 2);
  Instance inst;
  inst.variant = {objective, commitment, false, order_selection};
  inst.boxes.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const int support = 2 + static_cast<int>(rng.next() % 3);
    std::vector<double> values;
    while (static_cast<int>(values.size()) < support) {
      double v = static_cast<double>(rng.next() % 41) * 0.25;
      if (std::find(values.begin(), values.end(), v) == values.end()) {
        values.push_back(v);
      }
    }
    std::sort(values.begin(), values.end());
    // dyadic weights summing to 8, so probabilities add to exactly 1
    std::vector<int> cuts;
    while (static_cast<int>(cuts.size()) < support - 1) {
      int cut = 1 + static_cast<int>(rng.next() % 7);
      if (std::find(cuts.begin(), cuts.end(), cut) == cuts.end()) {
        cuts.push_back(cut);
      }
    }
    cuts.push_back(0);
    cuts.push_back(8);
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<double, double>> pairs;
    for (int j = 0; j < support; ++j) {
      pairs.emplace_back(values[static_cast<std::size_t>(j)],
                         static_cast<double>(cuts[j + 1] - cuts[j]) / 8.0);
    }
    inst.boxes.push_back({0.0, make_distribution(pairs)});
  }
  inst.validate();
  return inst;
}

Instance gen_family(const std::string& family, std::int64_t n,
                    std::uint64_t seed) {
  if (family == "tightness") return gen_tightness_instance(n);
  if (family == "example41") return gen_example_min_orderselect(n);
  if (family == "example32") return gen_example_max_cost(n, false, false);
  if (family == "random-nocost-max") {
    return random_no_cost_instance(Objective::Max, false, false, n, seed);
  }
  if (family == "random-nocost-max-commit") {
    return random_no_cost_instance(Objective::Max, true, false, n, seed);
  }
  if (family == "random-nocost-min") {
    return random_no_cost_instance(Objective::Min, false, false, n, seed);
  }
  throw Error(ErrorKind::Usage, "unknown family: " + family);
}

std::int64_t nearest_valid_n(const std::string& family, std::int64_t n) {
  const auto& families = known_families();
  if (std::find(families.begin(), families.end(), family) == families.end()) {
    throw Error(ErrorKind::Usage, "unknown family: " + family);
  }
  if (family == "example41") {
    std::int64_t k = std::llround(std::sqrt(static_cast<double>(std::max<std::int64_t>(n, 4))));
    std::int64_t best = -1;
    for (std::int64_t c : {k - 1, k, k + 1}) {
      if (c < 2) continue;
      std::int64_t sq = c * c;
      if (best < 0 || std::llabs(sq - n) < std::llabs(best - n)) best = sq;
    }
    return best;
  }
  return std::max<std::int64_t>(n, 2);
}

CellCheck run_cell_check(const VariantCell& cell, std::int64_t n,
                         std::int64_t trials, std::uint64_t seed,
                         int threads) {
  CellCheck check;
  if (!cell.demo) {
    check.ran = false;
    check.ok = true;
    check.text = "literature value; no demo";
    return check;
  }
  const std::string& family = cell.demo->family;
  const std::int64_t m = nearest_valid_n(family, n);
  std::ostringstream text;
  check.ran = true;

  if (family == "example32") {
    ClosedFormReport closed = closed_form_example32(m);
    double prophet = cell.variant.order_selection
                         ? closed.extras.at("prophet_orderselect")
                         : closed.prophet;
    check.ok = closed.alg < 0.0 && 0.0 < prophet;
    text << "alg " << format_double(closed.alg) << " < 0 < prophet "
         << format_double(prophet) << " at n=" << m;
  } else if (family == "random-nocost-max" || family == "random-nocost-min") {
    Instance inst =
        random_no_cost_instance(cell.variant.objective, false,
                                cell.variant.order_selection, m, seed);
    OpenAllPolicy policy(inst);
    McResult mc =
        monte_carlo(policy, inst, OracleKind::Prophet, trials, seed, threads);
    check.ok = mc.pathwise_equal == trials && mc.ratio == 1.0;
    text << "ratio 1 exactly; matched the prophet pathwise on all " << trials
         << " trials at n=" << m;
    if (!check.ok) {
      text.str("");
      text << "ratio " << format_double(mc.ratio) << " with "
           << (trials - mc.pathwise_equal) << " unequal trials at n=" << m;
    }
  } else if (family == "random-nocost-max-commit") {
    Instance inst = random_no_cost_instance(Objective::Max, true, false, m,
                                            seed);
    ThresholdPolicy policy(inst);
    McResult mc =
        monte_carlo(policy, inst, OracleKind::Prophet, trials, seed, threads);
    double slack = 3.0 * (mc.alg.half_width + mc.oracle.half_width);
    check.ok = mc.alg.mean >= 0.5 * mc.oracle.mean - slack;
    text << "threshold " << format_double(mc.alg.mean)
         << " >= 1/2 * prophet " << format_double(mc.oracle.mean)
         << " (within noise) at n=" << m;
  } else if (family == "example41") {
    ClosedFormReport closed = closed_form_example41(m);
    double closed_ratio = closed.alg / closed.prophet;
    Instance inst = gen_example_min_orderselect(m);
    WeitzmanPolicy policy(inst);
    McResult mc =
        monte_carlo(policy, inst, OracleKind::Prophet, trials, seed, threads);
    check.ok = std::fabs(mc.ratio - closed_ratio) <=
               0.1 * closed_ratio + 4.0 * mc.ratio_half_width;
    text << "ratio " << format_double(mc.ratio)
         << " tracks the sqrt(n) closed ratio "
         << format_double(closed_ratio) << " at n=" << m;
  } else if (family == "tightness") {
    Instance inst = gen_tightness_instance(m);
    SkiRentalPolicy policy(inst, true);
    McResult mc =
        monte_carlo(policy, inst, OracleKind::Prophet, trials, seed, threads);
    check.ok = 1.45 <= mc.ratio && mc.ratio <= 1.60;
    text << "ratio " << format_double(mc.ratio)
         << " in [1.45, 1.60] at n=" << m;
  } else {
    throw Error(ErrorKind::Usage, "unknown demo family: " + family);
  }
  check.text = text.str();
  return check;
}

}  // namespace pandora
