#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pandora/errors.hpp"
#include "pandora/instance_io.hpp"
#include "pandora/model.hpp"
#include "pandora/registry.hpp"
#include "pandora/render.hpp"
#include "test_util.hpp"

using testutil::expect_kind;

using pandora::CellCheck;
using pandora::ErrorKind;
using pandora::Format;
using pandora::Instance;
using pandora::Objective;
using pandora::RatioRow;
using pandora::StatusKind;
using pandora::VariantCell;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

pandora::RunMeta test_meta() {
  pandora::RunMeta meta = pandora::make_run_meta(7, 100);
  return meta;
}

}  // namespace

TEST_CASE("instance files round-trip and freeze their shape") {
  Instance inst = pandora::gen_tightness_instance(2);
  std::string text = pandora::emit_instance(inst);
  CHECK(text ==
        "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
        "\"commitment\":false,\"observation_cost\":true,"
        "\"order_selection\":false},\"boxes\":[{\"cost\":1.0,"
        "\"dist\":[[0.0,0.5],[2.0,0.5]]},{\"cost\":1.0,"
        "\"dist\":[[0.0,0.5],[2.0,0.5]]}]}");
  Instance back = pandora::parse_instance(text);
  CHECK(back == inst);

  Instance odd;
  odd.variant = {Objective::Max, true, true, true};
  odd.boxes.push_back(
      {0.1, pandora::make_distribution({{1.0 / 3.0, 0.25}, {7.25, 0.75}})});
  odd.boxes.push_back({2.0, pandora::make_distribution({{4.0, 1.0}})});
  CHECK(pandora::parse_instance(pandora::emit_instance(odd)) == odd);
}

TEST_CASE("instance files survive a disk round-trip") {
  Instance inst = pandora::gen_example_max_cost(4, true, true);
  std::string path = "/tmp/pandora_io_test_instance.json";
  pandora::write_instance_file(inst, path);
  Instance back = pandora::read_instance_file(path);
  CHECK(back == inst);
  std::remove(path.c_str());

  expect_kind(ErrorKind::BadInstanceFile, [] {
    (void)pandora::read_instance_file("/tmp/pandora_io_test_missing.json");
  });
}

TEST_CASE("instance parsing is strict") {
  const std::string good =
      "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
      "\"commitment\":false,\"observation_cost\":true,"
      "\"order_selection\":false},\"boxes\":[{\"cost\":1.0,"
      "\"dist\":[[0.0,0.5],[2.0,0.5]]}]}";
  CHECK(pandora::parse_instance(good).n() == 1);

  auto reject = [](const std::string& text) {
    expect_kind(ErrorKind::BadInstanceFile,
                [&] { (void)pandora::parse_instance(text); });
  };
  // not JSON at all
  reject("schema_version: 1");
  // wrong version
  reject(
      "{\"schema_version\":2,\"variant\":{\"objective\":\"min\","
      "\"commitment\":false,\"observation_cost\":true,"
      "\"order_selection\":false},\"boxes\":[]}");
  // unknown fields at every level are rejected, not ignored
  reject(
      "{\"schema_version\":1,\"comment\":\"hi\",\"variant\":{"
      "\"objective\":\"min\",\"commitment\":false,\"observation_cost\":true,"
      "\"order_selection\":false},\"boxes\":[]}");
  reject(
      "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
      "\"commitment\":false,\"observation_cost\":true,"
      "\"order_selection\":false,\"color\":3},\"boxes\":[]}");
  reject(
      "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
      "\"commitment\":false,\"observation_cost\":true,"
      "\"order_selection\":false},\"boxes\":[{\"cost\":1.0,\"dist\":"
      "[[0.0,1.0]],\"note\":\"x\"}]}");
  // missing fields
  reject(
      "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
      "\"commitment\":false,\"observation_cost\":true},\"boxes\":[]}");
  reject("{\"variant\":{\"objective\":\"min\",\"commitment\":false,"
         "\"observation_cost\":true,\"order_selection\":false},\"boxes\":[]}");
  // malformed pieces
  reject(
      "{\"schema_version\":1,\"variant\":{\"objective\":\"smallest\","
      "\"commitment\":false,\"observation_cost\":true,"
      "\"order_selection\":false},\"boxes\":[]}");
  reject(
      "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
      "\"commitment\":false,\"observation_cost\":true,"
      "\"order_selection\":false},\"boxes\":[{\"cost\":1.0,"
      "\"dist\":[[0.0,0.5,0.1],[2.0,0.5]]}]}");
  reject(
      "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
      "\"commitment\":\"no\",\"observation_cost\":true,"
      "\"order_selection\":false},\"boxes\":[]}");

  // structurally fine but semantically bad values go through the model's
  // own validation
  expect_kind(ErrorKind::ProbabilitySumMismatch, [] {
    (void)pandora::parse_instance(
        "{\"schema_version\":1,\"variant\":{\"objective\":\"min\","
        "\"commitment\":false,\"observation_cost\":true,"
        "\"order_selection\":false},\"boxes\":[{\"cost\":1.0,"
        "\"dist\":[[0.0,0.5],[2.0,0.4]]}]}");
  });
}

TEST_CASE("registry holds all sixteen cells once in fixed order") {
  const auto& cells = pandora::registry_cells();
  REQUIRE(cells.size() == 16);

  std::set<int> seen;
  for (const auto& cell : cells) {
    int key = (cell.variant.objective == Objective::Max ? 8 : 0) +
              (cell.variant.commitment ? 4 : 0) +
              (cell.variant.observation_cost ? 2 : 0) +
              (cell.variant.order_selection ? 1 : 0);
    seen.insert(key);
  }
  CHECK(seen.size() == 16);

  CHECK(cells[0].variant ==
        pandora::VariantSpec{Objective::Max, true, true, true});
  CHECK(cells[1].variant ==
        pandora::VariantSpec{Objective::Max, true, false, true});
  CHECK(cells[2].variant ==
        pandora::VariantSpec{Objective::Max, true, true, false});
  CHECK(cells[7].variant ==
        pandora::VariantSpec{Objective::Max, false, false, false});
  CHECK(cells[8].variant ==
        pandora::VariantSpec{Objective::Min, true, true, true});
  CHECK(cells[14].variant ==
        pandora::VariantSpec{Objective::Min, false, true, false});
  CHECK(cells[15].variant ==
        pandora::VariantSpec{Objective::Min, false, false, false});

  CHECK(cells[0].label == "-inf");
  CHECK(cells[1].label == "[0.726, 0.745]");
  CHECK(cells[2].label == "-inf");
  CHECK(cells[3].label == "1/2");
  CHECK(cells[5].label == "1");
  CHECK(cells[8].label == "inf");
  CHECK(cells[12].label == "inf");
  CHECK(cells[14].label == "1.58*");

  CHECK(cells[0].status == StatusKind::UnboundedBad);
  CHECK(cells[1].status == StatusKind::KnownRange);
  CHECK(cells[1].lo == doctest::Approx(0.726).epsilon(1e-9));
  CHECK(cells[1].hi == doctest::Approx(0.745).epsilon(1e-9));
  CHECK(cells[3].status == StatusKind::KnownRatio);
  CHECK(cells[3].lo == 0.5);
  CHECK(cells[5].status == StatusKind::Trivial1);
  CHECK(cells[14].status == StatusKind::KnownRatio);
  CHECK(cells[14].lo ==
        doctest::Approx(std::exp(1.0) / (std::exp(1.0) - 1.0)).epsilon(1e-9));

  int demos = 0;
  for (const auto& cell : cells) demos += cell.demo.has_value() ? 1 : 0;
  CHECK(demos == 11);
  CHECK(!cells[1].demo.has_value());
  for (int i = 8; i < 12; ++i) CHECK(!cells[i].demo.has_value());

  REQUIRE(cells[0].demo.has_value());
  CHECK(cells[0].demo->family == "example32");
  CHECK(cells[0].demo->policy == "dp-optimal");
  CHECK(cells[0].demo->oracle == "prophet");
  REQUIRE(cells[3].demo.has_value());
  CHECK(cells[3].demo->family == "random-nocost-max-commit");
  CHECK(cells[3].demo->policy == "threshold");
  REQUIRE(cells[12].demo.has_value());
  CHECK(cells[12].demo->family == "example41");
  CHECK(cells[12].demo->policy == "weitzman");
  REQUIRE(cells[14].demo.has_value());
  CHECK(cells[14].demo->family == "tightness");
  CHECK(cells[14].demo->policy == "ski-rental");
  REQUIRE(cells[5].demo.has_value());
  CHECK(cells[5].demo->policy == "open-all");
}

TEST_CASE("family generation dispatches and propagates errors") {
  Instance t2 = pandora::gen_family("tightness", 2, 0);
  CHECK(t2 == pandora::gen_tightness_instance(2));
  CHECK(t2.boxes[0].cost == 1.0);
  CHECK(t2.boxes[0].dist.values == std::vector<double>{0.0, 2.0});

  expect_kind(ErrorKind::NotPerfectSquare,
              [] { (void)pandora::gen_family("example41", 5, 0); });
  expect_kind(ErrorKind::Usage,
              [] { (void)pandora::gen_family("nosuch", 4, 0); });

  Instance rmax = pandora::gen_family("random-nocost-max", 5, 3);
  CHECK(rmax.variant ==
        pandora::VariantSpec{Objective::Max, false, false, false});
  CHECK(rmax.n() == 5);
  for (const auto& box : rmax.boxes) CHECK(box.cost == 0.0);
  rmax.validate();
  CHECK(pandora::gen_family("random-nocost-max", 5, 3) == rmax);
  CHECK(!(pandora::gen_family("random-nocost-max", 5, 4) == rmax));

  Instance rcom = pandora::gen_family("random-nocost-max-commit", 3, 1);
  CHECK(rcom.variant ==
        pandora::VariantSpec{Objective::Max, true, false, false});
  Instance rmin = pandora::gen_family("random-nocost-min", 3, 1);
  CHECK(rmin.variant ==
        pandora::VariantSpec{Objective::Min, false, false, false});

  Instance rsel =
      pandora::random_no_cost_instance(Objective::Min, false, true, 4, 9);
  CHECK(rsel.variant.order_selection);
  rsel.validate();
}

TEST_CASE("nearest valid n snaps to what each family accepts") {
  CHECK(pandora::nearest_valid_n("example41", 10000) == 10000);
  CHECK(pandora::nearest_valid_n("example41", 10) == 9);
  CHECK(pandora::nearest_valid_n("example41", 12) == 9);
  CHECK(pandora::nearest_valid_n("example41", 13) == 16);
  CHECK(pandora::nearest_valid_n("example41", 2) == 4);
  CHECK(pandora::nearest_valid_n("tightness", 1) == 2);
  CHECK(pandora::nearest_valid_n("tightness", 7) == 7);
  CHECK(pandora::nearest_valid_n("example32", 1) == 2);
  CHECK(pandora::nearest_valid_n("random-nocost-max", 1) == 2);
  expect_kind(ErrorKind::Usage,
              [] { (void)pandora::nearest_valid_n("nosuch", 4); });
}

TEST_CASE("cell checks verify each demo at desk scale") {
  const auto& cells = pandora::registry_cells();

  CellCheck range = pandora::run_cell_check(cells[1], 100, 100, 1, 1);
  CHECK(!range.ran);
  CHECK(range.ok);
  CHECK(range.text.find("no demo") != std::string::npos);
  CellCheck commit_inf = pandora::run_cell_check(cells[9], 100, 100, 1, 1);
  CHECK(!commit_inf.ran);

  for (int idx : {0, 2, 4, 6}) {
    CellCheck c = pandora::run_cell_check(cells[idx], 4, 500, 7, 1);
    CHECK(c.ran);
    CHECK(c.ok);
    CHECK(c.text.find("< 0 <") != std::string::npos);
  }

  CellCheck triv = pandora::run_cell_check(cells[5], 6, 400, 7, 2);
  CHECK(triv.ran);
  CHECK(triv.ok);
  CHECK(triv.text.find("pathwise") != std::string::npos);
  CellCheck triv_min = pandora::run_cell_check(cells[15], 6, 400, 7, 2);
  CHECK(triv_min.ok);

  CellCheck half = pandora::run_cell_check(cells[3], 8, 2000, 5, 2);
  CHECK(half.ran);
  CHECK(half.ok);
  CHECK(half.text.find("1/2") != std::string::npos);

  CellCheck sqrtn = pandora::run_cell_check(cells[12], 16, 3000, 11, 2);
  CHECK(sqrtn.ran);
  CHECK(sqrtn.ok);

  // n snapped to the nearest perfect square
  CellCheck snapped = pandora::run_cell_check(cells[12], 10, 1500, 11, 2);
  CHECK(snapped.ran);
  CHECK(snapped.text.find("n=9") != std::string::npos);

  CellCheck ski = pandora::run_cell_check(cells[14], 64, 4000, 13, 2);
  CHECK(ski.ran);
  CHECK(ski.ok);
  CHECK(ski.text.find("[1.45, 1.60]") != std::string::npos);
}

TEST_CASE("doubles render as shortest round-trip decimals") {
  CHECK(pandora::format_double(2.0) == "2");
  CHECK(pandora::format_double(1.75) == "1.75");
  CHECK(pandora::format_double(0.103271484375) == "0.103271484375");
  CHECK(pandora::format_double(-0.5) == "-0.5");
  CHECK(pandora::format_double(1234.5) == "1234.5");
  CHECK(pandora::format_double(std::numeric_limits<double>::infinity()) ==
        "inf");
  CHECK(pandora::format_double(-std::numeric_limits<double>::infinity()) ==
        "-inf");
  double third = 1.0 / 3.0;
  CHECK(std::stod(pandora::format_double(third)) == third);
}

TEST_CASE("csv fields quote only when needed") {
  CHECK(pandora::csv_field("plain text; semicolons fine") ==
        "plain text; semicolons fine");
  CHECK(pandora::csv_field("a,b") == "\"a,b\"");
  CHECK(pandora::csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(pandora::csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(pandora::csv_field("") == "");
}

TEST_CASE("format names parse") {
  CHECK(pandora::parse_format("csv") == Format::Csv);
  CHECK(pandora::parse_format("json") == Format::Json);
  CHECK(pandora::parse_format("pretty") == Format::Pretty);
  expect_kind(ErrorKind::Usage, [] { (void)pandora::parse_format("xml"); });
}

TEST_CASE("ratio rows render to csv with fixed columns") {
  std::vector<RatioRow> rows(2);
  rows[0].family = "tightness";
  rows[0].n = 2;
  rows[0].prophet_exact = 1.75;
  rows[0].alg_exact = 2.0;
  rows[0].has_mc = true;
  rows[0].has_alg_mc = true;
  rows[0].has_ci = true;
  rows[0].prophet_mc = 1.74;
  rows[0].alg_mc = 2.01;
  rows[0].ratio = 1.15;
  rows[0].ci = 0.02;
  rows[1].family = "tightness";
  rows[1].n = 1000000;
  rows[1].prophet_exact = 632120.5;
  rows[1].alg_exact = 1000000.0;
  rows[1].ratio = 1.581977;
  rows[1].annotation = "closed forms only above the sampling cap";

  std::string csv =
      pandora::render_ratio_rows(rows, Format::Csv, test_meta());
  // shortest-round-trip rendering prefers scientific for 10^6
  CHECK(csv ==
        "family,n,prophet_exact,alg_exact,prophet_mc,alg_mc,ratio,ci\n"
        "tightness,2,1.75,2,1.74,2.01,1.15,0.02\n"
        "tightness,1000000,632120.5,1e+06,,,1.581977,\n");

  std::string json =
      pandora::render_ratio_rows(rows, Format::Json, test_meta());
  auto doc = nlohmann::json::parse(json);
  CHECK(doc["meta"]["seed"] == 7);
  CHECK(doc["meta"]["trials"] == 100);
  CHECK(doc["meta"]["version"].is_string());
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["prophet_mc"] == 1.74);
  CHECK(doc["rows"][0]["ci"] == 0.02);
  CHECK(doc["rows"][1]["alg_mc"].is_null());
  CHECK(doc["rows"][1]["annotation"] ==
        "closed forms only above the sampling cap");

  std::string pretty =
      pandora::render_ratio_rows(rows, Format::Pretty, test_meta());
  CHECK(pretty.find("tightness") != std::string::npos);
  CHECK(pretty.find("1.581977") != std::string::npos);
}

TEST_CASE("table csv matches the checked-in fixture byte for byte") {
  const auto& cells = pandora::registry_cells();
  std::vector<CellCheck> checks(cells.size());
  std::string csv =
      pandora::render_table(cells, checks, Format::Csv, test_meta());
  std::string fixture =
      slurp(std::string(PANDORA_SOURCE_DIR) + "/tests/fixtures/table_golden.csv");
  CHECK(csv == fixture);
}

TEST_CASE("table json and pretty carry the checks") {
  const auto& cells = pandora::registry_cells();
  std::vector<CellCheck> checks(cells.size());
  checks[0].ran = true;
  checks[0].ok = true;
  checks[0].text = "alg -0.5 < 0 < prophet 0.103 at n=4";

  std::string json =
      pandora::render_table(cells, checks, Format::Json, test_meta());
  auto doc = nlohmann::json::parse(json);
  REQUIRE(doc["cells"].size() == 16);
  CHECK(doc["cells"][0]["status"] == "-inf");
  CHECK(doc["cells"][0]["objective"] == "max");
  CHECK(doc["cells"][0]["check"]["ran"] == true);
  CHECK(doc["cells"][0]["check"]["text"] ==
        "alg -0.5 < 0 < prophet 0.103 at n=4");
  CHECK(doc["cells"][1]["demo"].is_null());
  CHECK(doc["cells"][14]["demo"]["policy"] == "ski-rental");
  CHECK(doc["meta"]["seed"] == 7);

  std::string pretty =
      pandora::render_table(cells, checks, Format::Pretty, test_meta());
  CHECK(pretty.find("1.58*") != std::string::npos);
  CHECK(pretty.find("[0.726, 0.745]") != std::string::npos);
  CHECK(pretty.find("alg -0.5 < 0 < prophet 0.103 at n=4") !=
        std::string::npos);
}

TEST_CASE("run reports render in all three formats") {
  pandora::RunReport rep;
  rep.policy = "weitzman";
  rep.oracle = "prophet";
  rep.exact = true;
  rep.alg = 2.0;
  rep.oracle_value = 1.75;
  rep.ratio = 2.0 / 1.75;

  std::string csv =
      pandora::render_run_report(rep, Format::Csv, test_meta());
  CHECK(csv ==
        "policy,oracle,mode,alg,oracle_value,ratio,alg_ci,oracle_ci,"
        "ratio_ci,dominance_violations,pathwise_equal\n"
        "weitzman,prophet,exact,2,1.75,1.1428571428571428,,,,,\n");

  pandora::RunReport mc = rep;
  mc.exact = false;
  mc.has_ci = true;
  mc.alg_hw = 0.01;
  mc.oracle_hw = 0.02;
  mc.ratio_hw = 0.03;
  mc.dominance_violations = 0;
  mc.pathwise_equal = 12;
  std::string mcsv = pandora::render_run_report(mc, Format::Csv, test_meta());
  CHECK(mcsv.find("weitzman,prophet,mc,2,1.75,1.1428571428571428,0.01,0.02,"
                  "0.03,0,12\n") != std::string::npos);

  auto doc = nlohmann::json::parse(
      pandora::render_run_report(mc, Format::Json, test_meta()));
  CHECK(doc["policy"] == "weitzman");
  CHECK(doc["mode"] == "mc");
  CHECK(doc["ratio_ci"] == 0.03);
  auto exact_doc = nlohmann::json::parse(
      pandora::render_run_report(rep, Format::Json, test_meta()));
  CHECK(exact_doc["mode"] == "exact");
  CHECK(!exact_doc.contains("ratio_ci"));

  std::string pretty =
      pandora::render_run_report(rep, Format::Pretty, test_meta());
  CHECK(pretty.find("1.142857") != std::string::npos);
  CHECK(pretty.find("weitzman") != std::string::npos);
}

TEST_CASE("reservation values render") {
  pandora::ReservationValue rv{2.0, 0.0};
  CHECK(pandora::render_reservation(rv, Format::Csv) ==
        "sigma,residual\n2,0\n");
  auto doc = nlohmann::json::parse(
      pandora::render_reservation(rv, Format::Json));
  CHECK(doc["sigma"] == 2.0);
  CHECK(doc["residual"] == 0.0);
  CHECK(pandora::render_reservation(rv, Format::Pretty)
            .find("sigma") != std::string::npos);
}
