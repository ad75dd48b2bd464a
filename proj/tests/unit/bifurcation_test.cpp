#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "nilcycle/bifurcation/experiments.hpp"
#include "nilcycle/bifurcation/report.hpp"
#include "nilcycle/bifurcation/unfold.hpp"
#include "nilcycle/error.hpp"
#include "nilcycle/focal/lienard.hpp"

using namespace nilcycle;
namespace fs = std::filesystem;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

PlanarSystem family() { return parse_system("kind lienard\norder 20\ng 3 1\ng 5 1\n"); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kIoError;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nilcycle_unit_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("exact rational solve") {
  const auto x = solve_exact({{2, 1}, {1, 3}}, {3, 5});
  REQUIRE(x);
  CHECK((*x)[0] == q(4, 5));
  CHECK((*x)[1] == q(7, 5));
  CHECK_FALSE(solve_exact({{1, 2}, {2, 4}}, {1, 2}));
}

TEST_CASE("k = 0 gives an empty plan") {
  UnfoldOptions opts;
  opts.k = 0;
  const auto plan = unfold(family(), opts);
  CHECK(plan.target_count == 0);
  CHECK(plan.assignments.empty());
  CHECK(plan.ladder_indices.empty());
}

TEST_CASE("one-rung ladder above B_3") {
  UnfoldOptions opts;
  opts.k = 1;
  opts.start_index = 3;
  const auto plan = unfold(family(), opts);
  CHECK(plan.ladder_indices == std::vector<int>{3, 5});
  CHECK(ladder_holds(plan));
  const auto B = focal_B(build_lienard(lienard_parts(plan.realized).g, lienard_parts(plan.realized).f)).B;
  CHECK(B[4] == -1);
  CHECK(B[2] == q(1, 20));
  CHECK(plan.jacobian_rank == 1);
}

TEST_CASE("two-rung ladder with per-rung ratios") {
  UnfoldOptions opts;
  opts.k = 2;
  opts.rung_ratios = {q(1, 20), q(1, 500)};
  const auto plan = unfold(family(), opts);
  CHECK(plan.ladder_indices == std::vector<int>{1, 3, 5});
  CHECK(ladder_holds(plan));
  CHECK(plan.jacobian_rank == 2);
}

TEST_CASE("unfold rejects general systems and bad options") {
  const auto general = parse_system("kind general\nY 3 0 -1\nY 1 1 -1\n");
  CHECK(code_of([&] { unfold(general, {}); }) == ErrorCode::kUnachievableLadder);
  UnfoldOptions bad;
  bad.ratio = q(3, 2);
  CHECK(code_of([&] { unfold(family(), bad); }) == ErrorCode::kUnachievableLadder);
}

TEST_CASE("JSON report carries exact B values") {
  ExperimentReport r;
  r.experiment = "focal";
  r.focal = focal_B(build_lienard(TruncatedSeries({0, 0, 0, 1}, 12), TruncatedSeries({0, 0, 1}, 12)));
  r.metrics.emplace_back("whole", 2.0);
  r.criteria.push_back({"AC2", "B3", true, ""});
  const std::string json = render_json(r);
  CHECK(json.find("\"-2/3\"") != std::string::npos);
  CHECK(json.find("\"whole\": 2.0") != std::string::npos);
  CHECK(json.find("\"passed\": true") != std::string::npos);
}

TEST_CASE("plot data lists one line per bracket") {
  ExperimentReport r;
  r.experiment = "cycles";
  CycleSet set;
  set.brackets.push_back({0.0625, 0.09375, Crossing::kPlusToMinus});
  set.brackets.push_back({0.125, 0.25, Crossing::kMinusToPlus});
  r.cycles.emplace_back("positive", set);
  const std::string text = render_plotdata(r);
  const auto at = text.find("# brackets positive: lo hi crossing\n");
  REQUIRE(at != std::string::npos);
  const std::string block = text.substr(at);
  CHECK(block.find("0.0625 0.09375 +-") != std::string::npos);
  CHECK(block.find("0.125 0.25 -+") != std::string::npos);
}

TEST_CASE("emitted reports list their artifacts") {
  ExperimentReport r;
  r.experiment = "demo";
  ReturnMapTable table;
  table.samples.push_back({0.1, 0.09, -0.01});
  r.tables.emplace_back("pos", table);
  const fs::path dir = scratch("emit");
  emit_report(r, {ReportFormat::kJson, ReportFormat::kCsv, ReportFormat::kPlotData}, dir);
  CHECK(fs::exists(dir / "demo.json"));
  CHECK(fs::exists(dir / "demo_pos.csv"));
  CHECK(fs::exists(dir / "demo.plot.dat"));
  std::ifstream csv(dir / "demo_pos.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "x0,P,d");
  fs::remove_all(dir);
}

TEST_CASE("experiment configuration errors") {
  const ExperimentContext ctx{NILCYCLE_TEST_DATA_DIR, std::nullopt};
  CHECK(code_of([&] { run_experiment("prop9.9", ctx); }) == ErrorCode::kConfigError);
  CHECK(code_of([&] { run_experiment("symmetry", {NILCYCLE_TEST_DATA_DIR, fs::path("/nonexistent.json")}); }) ==
        ErrorCode::kConfigError);
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "wrong.json") << R"({"experiment": "prop4.1"})";
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(code_of([&] { run_experiment("symmetry", {NILCYCLE_TEST_DATA_DIR, dir / "wrong.json"}); }) ==
        ErrorCode::kConfigError);
  CHECK(code_of([&] { run_experiment("symmetry", {NILCYCLE_TEST_DATA_DIR, dir / "broken.json"}); }) ==
        ErrorCode::kConfigError);
  fs::remove_all(dir);
}

TEST_CASE("Kukles helper") {
  const auto sys = make_kukles(1, 0, 1, 0, q(1, 2), 0);
  const auto cls = classify(sys);
  CHECK(cls.n == 2);
  CHECK(cls.monodromic);
}
