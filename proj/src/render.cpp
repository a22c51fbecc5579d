#include "pandora/render.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pandora/errors.hpp"

#ifndef PANDORA_VERSION
#define PANDORA_VERSION "unknown"
#endif

namespace pandora {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

const char* objective_name(Objective o) {
  return o == Objective::Min ? "min" : "max";
}

ordered_json meta_json(const RunMeta& meta) {
  ordered_json m;
  m["seed"] = meta.seed;
  m["trials"] = meta.trials;
  m["version"] = meta.version;
  return m;
}

std::string meta_line(const RunMeta& meta) {
  std::ostringstream out;
  out << "# seed " << meta.seed << "  trials " << meta.trials << "  version "
      << meta.version << "\n";
  return out.str();
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  if (name == "pretty") return Format::Pretty;
  throw Error(ErrorKind::Usage, "unknown format: " + name);
}

RunMeta make_run_meta(std::uint64_t seed, std::int64_t trials) {
  return RunMeta{seed, trials, PANDORA_VERSION};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string render_ratio_rows(const std::vector<RatioRow>& rows, Format format,
                              const RunMeta& meta) {
  if (format == Format::Csv) {
    std::string out =
        "family,n,prophet_exact,alg_exact,prophet_mc,alg_mc,ratio,ci\n";
    for (const RatioRow& row : rows) {
      out += csv_field(row.family);
      out += ',' + std::to_string(row.n);
      out += ',' + format_double(row.prophet_exact);
      out += ',' + format_double(row.alg_exact);
      out += ',';
      if (row.has_mc) out += format_double(row.prophet_mc);
      out += ',';
      if (row.has_alg_mc) out += format_double(row.alg_mc);
      out += ',' + format_double(row.ratio);
      out += ',';
      if (row.has_ci) out += format_double(row.ci);
      out += '\n';
    }
    return out;
  }
  if (format == Format::Json) {
    ordered_json root;
    root["meta"] = meta_json(meta);
    ordered_json arr = ordered_json::array();
    for (const RatioRow& row : rows) {
      ordered_json r;
      r["family"] = row.family;
      r["n"] = row.n;
      r["prophet_exact"] = row.prophet_exact;
      r["alg_exact"] = row.alg_exact;
      r["prophet_mc"] = row.has_mc ? ordered_json(row.prophet_mc)
                                   : ordered_json(nullptr);
      r["alg_mc"] =
          row.has_alg_mc ? ordered_json(row.alg_mc) : ordered_json(nullptr);
      r["ratio"] = row.ratio;
      r["ci"] = row.has_ci ? ordered_json(row.ci) : ordered_json(nullptr);
      r["annotation"] = row.annotation;
      arr.push_back(std::move(r));
    }
    root["rows"] = std::move(arr);
    return root.dump(2) + "\n";
  }
  std::ostringstream out;
  out << meta_line(meta);
  auto col = [&out](const std::string& text) {
    out << ' ' << std::right << std::setw(20) << text;
  };
  out << std::left << std::setw(11) << "family";
  for (const char* head :
       {"n", "prophet_exact", "alg_exact", "prophet_mc", "alg_mc", "ratio",
        "ci"}) {
    col(head);
  }
  out << "\n";
  for (const RatioRow& row : rows) {
    out << std::left << std::setw(11) << row.family;
    col(std::to_string(row.n));
    col(format_double(row.prophet_exact));
    col(format_double(row.alg_exact));
    col(row.has_mc ? format_double(row.prophet_mc) : "-");
    col(row.has_alg_mc ? format_double(row.alg_mc) : "-");
    col(format_double(row.ratio));
    col(row.has_ci ? format_double(row.ci) : "-");
    if (!row.annotation.empty()) out << "  [" << row.annotation << "]";
    out << "\n";
  }
  return out.str();
}

std::string render_table(const std::vector<VariantCell>& cells,
                         const std::vector<CellCheck>& checks, Format format,
                         const RunMeta& meta) {
  if (format == Format::Csv) {
    std::string out =
        "objective,commitment,observation_cost,order_selection,status,"
        "citation,demo\n";
    for (const VariantCell& cell : cells) {
      out += objective_name(cell.variant.objective);
      out += ',';
      out += yes_no(cell.variant.commitment);
      out += ',';
      out += yes_no(cell.variant.observation_cost);
      out += ',';
      out += yes_no(cell.variant.order_selection);
      out += ',' + csv_field(cell.label);
      out += ',' + csv_field(cell.citation);
      out += ',';
      out += cell.demo ? csv_field(cell.demo->family) : "no demo";
      out += '\n';
    }
    return out;
  }
  if (format == Format::Json) {
    ordered_json root;
    root["meta"] = meta_json(meta);
    ordered_json arr = ordered_json::array();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const VariantCell& cell = cells[i];
      ordered_json c;
      c["objective"] = objective_name(cell.variant.objective);
      c["commitment"] = cell.variant.commitment;
      c["observation_cost"] = cell.variant.observation_cost;
      c["order_selection"] = cell.variant.order_selection;
      c["status"] = cell.label;
      c["citation"] = cell.citation;
      if (cell.demo) {
        ordered_json d;
        d["family"] = cell.demo->family;
        d["policy"] = cell.demo->policy;
        d["oracle"] = cell.demo->oracle;
        c["demo"] = std::move(d);
      } else {
        c["demo"] = nullptr;
      }
      if (i < checks.size()) {
        ordered_json k;
        k["ran"] = checks[i].ran;
        k["ok"] = checks[i].ok;
        k["text"] = checks[i].text;
        c["check"] = std::move(k);
      }
      arr.push_back(std::move(c));
    }
    root["cells"] = std::move(arr);
    return root.dump(2) + "\n";
  }
  std::ostringstream out;
  out << meta_line(meta);
  out << std::left << std::setw(5) << "obj" << std::setw(8) << "commit"
      << std::setw(6) << "cost" << std::setw(7) << "order" << std::setw(17)
      << "status" << "check\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const VariantCell& cell = cells[i];
    out << std::left << std::setw(5) << objective_name(cell.variant.objective)
        << std::setw(8) << yes_no(cell.variant.commitment) << std::setw(6)
        << yes_no(cell.variant.observation_cost) << std::setw(7)
        << yes_no(cell.variant.order_selection) << std::setw(17) << cell.label;
    if (i < checks.size() && !checks[i].text.empty()) {
      out << checks[i].text;
    }
    out << "\n     [" << cell.citation << "]\n";
  }
  return out.str();
}

std::string render_run_report(const RunReport& report, Format format,
                              const RunMeta& meta) {
  const char* mode = report.exact ? "exact" : "mc";
  if (format == Format::Csv) {
    std::string out =
        "policy,oracle,mode,alg,oracle_value,ratio,alg_ci,oracle_ci,ratio_ci,"
        "dominance_violations,pathwise_equal\n";
    out += csv_field(report.policy);
    out += ',' + csv_field(report.oracle);
    out += ',';
    out += mode;
    out += ',' + format_double(report.alg);
    out += ',' + format_double(report.oracle_value);
    out += ',' + format_double(report.ratio);
    if (report.has_ci) {
      out += ',' + format_double(report.alg_hw);
      out += ',' + format_double(report.oracle_hw);
      out += ',' + format_double(report.ratio_hw);
      out += ',' + std::to_string(report.dominance_violations);
      out += ',' + std::to_string(report.pathwise_equal);
    } else {
      out += ",,,,,";
    }
    out += '\n';
    return out;
  }
  if (format == Format::Json) {
    ordered_json root;
    root["meta"] = meta_json(meta);
    root["policy"] = report.policy;
    root["oracle"] = report.oracle;
    root["mode"] = mode;
    root["alg"] = report.alg;
    root["oracle_value"] = report.oracle_value;
    root["ratio"] = report.ratio;
    if (report.has_ci) {
      root["alg_ci"] = report.alg_hw;
      root["oracle_ci"] = report.oracle_hw;
      root["ratio_ci"] = report.ratio_hw;
      root["dominance_violations"] = report.dominance_violations;
      root["pathwise_equal"] = report.pathwise_equal;
    }
    return root.dump(2) + "\n";
  }
  std::ostringstream out;
  out << meta_line(meta);
  out << "policy: " << report.policy << "\n";
  out << "oracle: " << report.oracle << "\n";
  out << "mode: " << mode << "\n";
  out << "alg: " << format_double(report.alg);
  if (report.has_ci) out << " +/- " << format_double(report.alg_hw);
  out << "\n";
  out << "oracle value: " << format_double(report.oracle_value);
  if (report.has_ci) out << " +/- " << format_double(report.oracle_hw);
  out << "\n";
  out << "ratio: " << format_double(report.ratio);
  if (report.has_ci) out << " +/- " << format_double(report.ratio_hw);
  out << "\n";
  if (report.has_ci) {
    out << "dominance violations: " << report.dominance_violations << "\n";
    out << "pathwise equal trials: " << report.pathwise_equal << "\n";
  }
  return out.str();
}

std::string render_reservation(const ReservationValue& rv, Format format) {
  if (format == Format::Csv) {
    return "sigma,residual\n" + format_double(rv.sigma) + "," +
           format_double(rv.residual) + "\n";
  }
  if (format == Format::Json) {
    ordered_json root;
    root["sigma"] = rv.sigma;
    root["residual"] = rv.residual;
    return root.dump() + "\n";
  }
  return "sigma: " + format_double(rv.sigma) +
         "\nresidual: " + format_double(rv.residual) + "\n";
}

}  // namespace pandora
