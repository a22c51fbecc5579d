#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pandora/model.hpp"

namespace pandora {

enum class StatusKind { KnownRatio, KnownRange, Trivial1, UnboundedBad };

// A runnable illustration of a cell: generate `family`, evaluate `policy`
// against `oracle`.
struct DemoSpec {
  std::string family;
  std::string policy;
  std::string oracle;
};

struct VariantCell {
  VariantSpec variant;
  StatusKind status = StatusKind::Trivial1;
  // KnownRatio keeps its value in lo == hi; KnownRange keeps both ends;
  // UnboundedBad keeps the signed infinity.
  double lo = 1.0;
  double hi = 1.0;
  std::string label;  // table text, e.g. "-inf", "1/2", "1.58*"
  std::string citation;
  std::optional<DemoSpec> demo;
};

// All 16 variant cells in fixed order: maximization before minimization,
// commitment yes before no, and within each block (order selection,
// observation cost) in (yes,yes), (yes,no), (no,yes), (no,no) order.
const std::vector<VariantCell>& registry_cells();

// Desk-scale verification of one cell at size n. Cells whose entry is a
// literature value with nothing to execute come back with ran == false.
struct CellCheck {
  bool ran = false;
  bool ok = true;
  std::string text;
};
CellCheck run_cell_check(const VariantCell& cell, std::int64_t n,
                         std::int64_t trials, std::uint64_t seed, int threads);

// Families the CLI can generate. Besides the hard-instance generators this
// covers seeded random no-cost instances used by the trivial and 1/2 cells.
const std::vector<std::string>& known_families();
Instance gen_family(const std::string& family, std::int64_t n,
                    std::uint64_t seed);

// Smallest adjustment of n the family accepts: next perfect square for
// example41, a floor of 2 elsewhere.
std::int64_t nearest_valid_n(const std::string& family, std::int64_t n);

Instance random_no_cost_instance(Objective objective, bool commitment,
                                 bool order_selection, std::int64_t n,
                                 std::uint64_t seed);

}  // namespace pandora
