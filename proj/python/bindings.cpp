#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pandora/distribution.hpp"
#include "pandora/engine.hpp"
#include "pandora/errors.hpp"
#include "pandora/instance_io.hpp"
#include "pandora/model.hpp"
#include "pandora/oracles.hpp"
#include "pandora/policies.hpp"
#include "pandora/registry.hpp"
#include "pandora/render.hpp"

namespace py = pybind11;
using namespace pandora;

namespace {

Instance load(const std::string& text) { return parse_instance(text); }

std::unique_ptr<Policy> build_policy(const Instance& inst,
                                     const std::string& name,
                                     std::optional<double> tau) {
  if (name == "weitzman") return std::make_unique<WeitzmanPolicy>(inst);
  if (name == "ski-rental") return std::make_unique<SkiRentalPolicy>(inst, true);
  if (name == "ski-rental-deterministic") {
    return std::make_unique<SkiRentalPolicy>(inst, false);
  }
  if (name == "threshold") return std::make_unique<ThresholdPolicy>(inst, tau);
  if (name == "open-all") return std::make_unique<OpenAllPolicy>(inst);
  if (name == "dp-optimal") return std::make_unique<DpPolicy>(inst);
  throw Error(ErrorKind::Usage, "unknown policy: " + name);
}

OracleKind parse_oracle_name(const std::string& name) {
  if (name == "prophet") return OracleKind::Prophet;
  if (name == "weak-prophet") return OracleKind::WeakProphet;
  if (name == "dp-optimal") return OracleKind::DpOptimal;
  throw Error(ErrorKind::Usage, "unknown oracle: " + name);
}

py::dict estimate_dict(const Estimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["half_width"] = e.half_width;
  d["trials"] = e.trials;
  d["seed"] = e.seed;
  return d;
}

py::dict closed_form_dict(const ClosedFormReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["prophet"] = r.prophet;
  d["alg"] = r.alg;
  d["extras"] = r.extras;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Box-opening policies, benchmarks, and exact/simulated ratios";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string text = std::string("(") + e.kind_name() + ") " + e.what();
      PyErr_SetString(PyExc_ValueError, text.c_str());
    }
  });

  m.def("version", [] { return make_run_meta(0, 0).version; },
        "Build identifier baked in at compile time");

  m.def("families", [] { return known_families(); },
        "Instance families understood by gen()");

  m.def(
      "gen",
      [](const std::string& family, std::int64_t n, std::uint64_t seed) {
        return emit_instance(gen_family(family, n, seed));
      },
      py::arg("family"), py::arg("n"), py::arg("seed") = 12345,
      "Generate an instance of the named family, serialized as json");

  m.def(
      "closed_form",
      [](const std::string& family, std::int64_t n) {
        if (family == "tightness") {
          return closed_form_dict(closed_form_tightness(n));
        }
        if (family == "example41") {
          return closed_form_dict(closed_form_example41(n));
        }
        if (family == "example32") {
          return closed_form_dict(closed_form_example32(n));
        }
        throw Error(ErrorKind::Usage, "no closed form for " + family);
      },
      py::arg("family"), py::arg("n"),
      "Benchmark and algorithm payoffs without simulation");

  m.def(
      "reservation",
      [](const std::vector<std::pair<double, double>>& dist, double cost) {
        ReservationValue rv = reservation_value(make_distribution(dist), cost);
        py::dict d;
        d["sigma"] = rv.sigma;
        d["residual"] = rv.residual;
        return d;
      },
      py::arg("dist"), py::arg("cost"),
      "Solve E[(sigma - V)^+] = cost for the index sigma");

  m.def(
      "exact_run",
      [](const std::string& instance_json, const std::string& policy,
         std::optional<double> tau) {
        Instance inst = load(instance_json);
        auto pol = build_policy(inst, policy, tau);
        return exact_eval(*pol, inst);
      },
      py::arg("instance"), py::arg("policy"), py::arg("tau") = py::none(),
      "Exact expected payoff of the named policy by state-space traversal");

  m.def(
      "oracle_value",
      [](const std::string& instance_json, const std::string& oracle) {
        return exact_oracle_value(load(instance_json),
                                  parse_oracle_name(oracle));
      },
      py::arg("instance"), py::arg("oracle") = "prophet",
      "Exact expected payoff of the named benchmark");

  m.def(
      "mc_run",
      [](const std::string& instance_json, const std::string& policy,
         const std::string& oracle, std::int64_t trials, std::uint64_t seed,
         int threads, std::optional<double> tau) {
        Instance inst = load(instance_json);
        auto pol = build_policy(inst, policy, tau);
        McResult r = monte_carlo(*pol, inst, parse_oracle_name(oracle), trials,
                                 seed, threads);
        py::dict d;
        d["alg"] = estimate_dict(r.alg);
        d["oracle"] = estimate_dict(r.oracle);
        d["ratio"] = r.ratio;
        d["ratio_half_width"] = r.ratio_half_width;
        d["dominance_violations"] = r.dominance_violations;
        d["pathwise_equal"] = r.pathwise_equal;
        return d;
      },
      py::arg("instance"), py::arg("policy"), py::arg("oracle") = "prophet",
      py::arg("trials") = 10000, py::arg("seed") = 12345,
      py::arg("threads") = 1, py::arg("tau") = py::none(),
      "Paired simulation of policy against benchmark under common random "
      "numbers; bit-identical for any thread count");

  m.def(
      "ratio_rows",
      [](const std::string& family, const std::vector<std::int64_t>& n_list,
         std::int64_t trials, std::uint64_t seed, int threads,
         std::int64_t mc_max_n) {
        std::vector<py::dict> out;
        for (const RatioRow& row :
             ratio_report(family, n_list, trials, seed, threads, mc_max_n)) {
          py::dict d;
          d["family"] = row.family;
          d["n"] = row.n;
          d["prophet_exact"] = row.prophet_exact;
          d["alg_exact"] = row.alg_exact;
          d["prophet_mc"] =
              row.has_mc ? py::object(py::float_(row.prophet_mc)) : py::none();
          d["alg_mc"] = row.has_mc && row.has_alg_mc
                            ? py::object(py::float_(row.alg_mc))
                            : py::none();
          d["ratio"] = row.ratio;
          d["ci"] = row.has_ci ? py::object(py::float_(row.ci)) : py::none();
          d["annotation"] = row.annotation;
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("family"), py::arg("n_list"), py::arg("trials") = 10000,
      py::arg("seed") = 12345, py::arg("threads") = 1,
      py::arg("mc_max_n") = 10000,
      "Closed forms for every n, sampled ratios up to mc_max_n boxes");

  m.def(
      "table_csv",
      [] {
        const auto& cells = registry_cells();
        std::vector<CellCheck> checks(cells.size());
        return render_table(cells, checks, Format::Csv, make_run_meta(0, 0));
      },
      "The sixteen-cell variant table in csv form");
}
