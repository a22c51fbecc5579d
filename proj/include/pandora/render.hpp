#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pandora/distribution.hpp"
#include "pandora/engine.hpp"
#include "pandora/registry.hpp"

namespace pandora {

enum class Format { Csv, Json, Pretty };
Format parse_format(const std::string& name);

struct RunMeta {
  std::uint64_t seed = 0;
  std::int64_t trials = 0;
  std::string version;  // git describe, baked in at build time
};
RunMeta make_run_meta(std::uint64_t seed, std::int64_t trials);

// Shortest decimal that parses back to the same double; infinities render
// as inf / -inf.
std::string format_double(double v);

// RFC 4180 quoting, applied only when the field needs it.
std::string csv_field(const std::string& field);

std::string render_ratio_rows(const std::vector<RatioRow>& rows, Format format,
                              const RunMeta& meta);

// CSV keeps the seven stable registry columns so the output is comparable
// against the checked-in fixture; the per-cell checks appear in the json
// and pretty renderings.
std::string render_table(const std::vector<VariantCell>& cells,
                         const std::vector<CellCheck>& checks, Format format,
                         const RunMeta& meta);

struct RunReport {
  std::string policy;
  std::string oracle;
  bool exact = false;
  double alg = 0.0;
  double oracle_value = 0.0;
  double ratio = 0.0;
  bool has_ci = false;
  double alg_hw = 0.0;
  double oracle_hw = 0.0;
  double ratio_hw = 0.0;
  std::int64_t dominance_violations = 0;
  std::int64_t pathwise_equal = 0;
};
std::string render_run_report(const RunReport& report, Format format,
                              const RunMeta& meta);

std::string render_reservation(const ReservationValue& rv, Format format);

}  // namespace pandora
