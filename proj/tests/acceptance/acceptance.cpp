// Runs the committed experiments and reports one verdict per acceptance
// criterion. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nilcycle/bifurcation/experiments.hpp"
#include "nilcycle/error.hpp"
#include "nilcycle/focal/lienard.hpp"

using namespace nilcycle;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool seen = false;
  bool pass = true;
  std::vector<std::string> details;

  void add(bool ok, const std::string& detail) {
    seen = true;
    pass = pass && ok;
    details.push_back(detail);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Run {
  ExperimentReport report;
  double seconds = 0.0;
};

Run run(const std::string& id) {
  const fs::path data = NILCYCLE_TEST_DATA_DIR;
  const ExperimentContext ctx{data, data / "configs" / (id + ".json")};
  const auto start = Clock::now();
  Run r{run_experiment(id, ctx), 0.0};
  r.seconds = seconds_since(start);
  return r;
}

void collect(std::map<std::string, Verdict>& verdicts, const ExperimentReport& report) {
  for (const auto& c : report.criteria) verdicts[c.id].add(c.pass, report.experiment + ": " + c.detail);
}

// Exact B identity for x' = y, y' = -(x^3 + x^5) - y sum b_j x^j timed on its own.
bool exact_identity(double& elapsed) {
  const auto start = Clock::now();
  const TruncatedSeries g({0, 0, 0, 1, 0, 1}, 20);
  const std::vector<Rational> b{Rational(3, 7), Rational(-5, 2), Rational(1, 9), Rational(4),
                                Rational(-2, 3), Rational(7, 11), Rational(-1, 13)};
  const auto B = focal_coefficients(g, TruncatedSeries(b, 20));
  bool ok = B.size() >= 8;
  for (int j = 0; ok && j <= 3; ++j) {
    const Rational expected = Rational(-2) * b[static_cast<std::size_t>(2 * j)] / Rational(2 * j + 1);
    ok = B[static_cast<std::size_t>(2 * j)] == expected && B[static_cast<std::size_t>(2 * j + 1)] == 0;
  }
  elapsed = seconds_since(start);
  return ok;
}

}  // namespace

int main() {
  std::map<std::string, Verdict> v;
  try {
    double ac1_time = 0.0;
    const bool ac1 = exact_identity(ac1_time);
    v["AC1"].add(ac1 && ac1_time < 1.0, "direct check in " + fmt(ac1_time) + " s");

    const Run self1 = run("selftest");
    collect(v, self1.report);
    const Run self2 = run("selftest");
    const bool same = render_json(self1.report) == render_json(self2.report);
    v["AC12"].add(same, same ? "two selftest reports are byte-identical" : "selftest reports differ");

    const Run sym = run("symmetry");
    collect(v, sym.report);

    const Run p41 = run("prop4.1");
    collect(v, p41.report);
    v["AC3"].add(p41.seconds < 120.0, "prop4.1 ran in " + fmt(p41.seconds) + " s");

    const Run trunc = run("truncation");
    collect(v, trunc.report);
    v["AC10"].add(trunc.seconds < 60.0, "truncation ran in " + fmt(trunc.seconds) + " s");

    const Run p43 = run("prop4.3");
    collect(v, p43.report);
    v["AC11"].add(p43.seconds < 120.0, "prop4.3 ran in " + fmt(p43.seconds) + " s");
  } catch (const Error& e) {
    std::printf("error: %s\n", e.what());
    return 2;
  }

  bool all = true;
  auto print = [&](const std::string& id, Verdict& verdict) {
    if (!verdict.seen) verdict.add(false, "not checked");
    all = all && verdict.pass;
    std::printf("%-4s %-5s", verdict.pass ? "PASS" : "FAIL", id.c_str());
    for (std::size_t i = 0; i < verdict.details.size(); ++i) std::printf("%s%s", i ? "; " : " ", verdict.details[i].c_str());
    std::printf("\n");
  };
  for (int i = 1; i <= 12; ++i) print("AC" + std::to_string(i), v["AC" + std::to_string(i)]);
  for (auto& [id, verdict] : v) {
    if (id.rfind("AC", 0) != 0) print(id, verdict);
  }
  return all ? 0 : 1;
}
