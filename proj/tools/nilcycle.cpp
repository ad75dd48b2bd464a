#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nilcycle/bifurcation/experiments.hpp"
#include "nilcycle/bifurcation/report.hpp"
#include "nilcycle/bifurcation/unfold.hpp"
#include "nilcycle/error.hpp"
#include "nilcycle/focal/lienard.hpp"
#include "nilcycle/poincare/cycles.hpp"
#include "nilcycle/poincare/return_map.hpp"
#include "nilcycle/system/planar_system.hpp"

#ifndef NILCYCLE_DEFAULT_DATA_DIR
#define NILCYCLE_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace nilcycle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCriterion = 1;
constexpr int kExitInput = 2;

struct Common {
  std::string out = "out";
  std::string data = NILCYCLE_DEFAULT_DATA_DIR;
  std::vector<std::string> formats{"json", "csv", "plotdata"};
  int order = 0;
};

std::vector<ReportFormat> parse_formats(const std::vector<std::string>& names) {
  std::vector<ReportFormat> out;
  for (const auto& n : names) {
    if (n == "json") out.push_back(ReportFormat::kJson);
    else if (n == "csv") out.push_back(ReportFormat::kCsv);
    else if (n == "plotdata") out.push_back(ReportFormat::kPlotData);
    else throw Error(ErrorCode::kConfigError, "unknown format '" + n + "'");
  }
  return out;
}

PlanarSystem load(const std::string& file, int order) {
  PlanarSystem sys = load_system(file);
  if (order > 0) {
    sys.series_order = order;
    sys.X = sys.X.with_order(order);
    sys.Y = sys.Y.with_order(order);
  }
  return sys;
}

int finish(ExperimentReport& report, const Common& common) {
  emit_report(report, parse_formats(common.formats), common.out);
  std::cout << report.experiment << ": " << (report.passed() ? "ok" : "FAILED");
  for (const auto& a : report.artifacts) std::cout << ' ' << (fs::path(common.out) / a).string();
  std::cout << '\n';
  for (const auto& c : report.criteria) {
    std::cout << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.id << ' ' << c.description << " -- " << c.detail << '\n';
  }
  return report.passed() ? kExitOk : kExitCriterion;
}

void add_focal(ExperimentReport& report, const PlanarSystem& sys) {
  const LienardParts parts = sys.kind == SystemKind::kLienard ? lienard_parts(sys) : extract_fg(sys);
  const LienardData data = build_lienard(parts.g, parts.f);
  report.focal = focal_B(data);
  report.filippov = filippov_check(data);
}

int cmd_classify(const std::string& file, const Common& common) {
  const PlanarSystem sys = load(file, common.order);
  ExperimentReport report;
  report.experiment = "classify";
  report.inputs = {{"system", file}, {"kind", std::string(to_string(sys.kind))},
                   {"orientation", std::to_string(sys.input_orientation)}};
  const LienardParts parts = sys.kind == SystemKind::kLienard ? lienard_parts(sys) : extract_fg(sys);
  report.classification = classify_nilpotent(parts.g, parts.f);
  report.notes.push_back("g = " + parts.g.truncated(std::min(parts.g.order(), 12)).to_string());
  report.notes.push_back("f = " + parts.f.truncated(std::min(parts.f.order(), 12)).to_string());
  return finish(report, common);
}

int cmd_focal(const std::string& file, const Common& common) {
  const PlanarSystem sys = load(file, common.order);
  ExperimentReport report;
  report.experiment = "focal";
  report.inputs = {{"system", file}, {"order", std::to_string(sys.series_order)}};
  report.classification = classify(sys);
  if (sys.kind == SystemKind::kLienard) {
    add_focal(report, sys);
  } else {
    // No exact normal form for general systems: estimate v_j numerically.
    const PolarField field(sys);
    const auto table = sample_return_map(field, geometric_grid(1e-3, 0.1, 40), Side::kPositive);
    report.fits.emplace_back("numeric", fit_focal(table));
    report.tables.emplace_back("pos", table);
    report.notes.push_back("general system: focal values estimated from the return map");
  }
  return finish(report, common);
}

int cmd_returnmap(const std::string& file, double lo, double hi, int samples, const std::string& side,
                  int J, const Common& common) {
  if (!(lo > 0 && hi > lo) || samples < 2) throw Error(ErrorCode::kConfigError, "need 0 < x0-min < x0-max and samples >= 2");
  const PlanarSystem sys = load(file, common.order);
  const PolarField field(sys);
  ExperimentReport report;
  report.experiment = "returnmap";
  report.inputs = {{"system", file}, {"x0_min", format_float(lo)}, {"x0_max", format_float(hi)},
                   {"samples", std::to_string(samples)}, {"side", side}};
  const auto grid = geometric_grid(lo, hi, samples);
  if (side == "pos" || side == "both") report.tables.emplace_back("pos", sample_return_map(field, grid, Side::kPositive));
  if (side == "neg" || side == "both") report.tables.emplace_back("neg", sample_return_map(field, grid, Side::kNegative));
  for (const auto& [name, table] : report.tables) {
    if (static_cast<int>(table.samples.size()) >= 2 * J) report.fits.emplace_back(name, fit_focal(table, {J}));
  }
  return finish(report, common);
}

int cmd_cycles(const std::string& file, double r_max, int grid, double r_min, const Common& common) {
  if (!(r_max > 0) || grid < 2) throw Error(ErrorCode::kConfigError, "need rmax > 0 and grid >= 2");
  const PlanarSystem sys = load(file, common.order);
  const PolarField field(sys);
  ExperimentReport report;
  report.experiment = "cycles";
  report.inputs = {{"system", file}, {"rmax", format_float(r_max)}, {"grid", std::to_string(grid)}};
  CycleOptions opts;
  opts.r_min = r_min;
  const CycleSet set = count_cycles(field, r_max, grid, opts);
  for (std::size_t i = 0; i < set.roots.size(); ++i) {
    report.polylines.emplace_back("cycle" + std::to_string(i + 1), orbit_polyline(field, set.roots[i].x, 256));
  }
  report.cycles.emplace_back("positive", set);
  return finish(report, common);
}

int cmd_unfold(const std::string& file, int k, const std::string& eps, const std::string& ratio, int start,
               int sign, const Common& common) {
  const PlanarSystem family = load(file, common.order);
  UnfoldOptions opts;
  opts.k = k;
  opts.start_index = start;
  opts.top_sign = sign;
  try {
    opts.eps = parse_decimal(eps);
    opts.ratio = parse_decimal(ratio);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kConfigError, e.what());
  }
  ExperimentReport report;
  report.experiment = "unfold";
  report.inputs = {{"system", file}, {"k", std::to_string(k)}, {"eps", to_string(opts.eps)},
                   {"ratio", to_string(opts.ratio)}, {"start", std::to_string(start)}};
  const UnfoldingPlan plan = unfold(family, opts);
  add_focal(report, plan.realized);
  report.plans.emplace_back("plan", plan);
  std::error_code ec;
  fs::create_directories(common.out, ec);
  const fs::path pvf = fs::path(common.out) / "unfold_realized.pvf";
  std::ofstream os(pvf);
  if (!(os << format_system(plan.realized))) throw Error(ErrorCode::kIoError, "cannot write " + pvf.string());
  report.artifacts.push_back(pvf.filename().string());
  return finish(report, common);
}

int cmd_experiment(const std::string& id, const std::string& config, const Common& common) {
  ExperimentContext ctx{common.data, std::nullopt};
  if (!config.empty()) ctx.config = config;
  ExperimentReport report = run_experiment(id, ctx);
  return finish(report, common);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nilpotent center-focus analysis and limit-cycle experiments"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out, "Output directory")->capture_default_str();
  app.add_option("--data", common.data, "Data directory holding systems/ and configs/")->capture_default_str();
  app.add_option("--format", common.formats, "Report formats: json, csv, plotdata")->delimiter(',')->capture_default_str();

  std::string file;
  auto* classify_cmd = app.add_subcommand("classify", "Monodromy classification of the origin");
  classify_cmd->add_option("file", file, "PVF system file")->required();

  auto* focal_cmd = app.add_subcommand("focal", "Focal coefficients and stability");
  focal_cmd->add_option("file", file, "PVF system file")->required();
  focal_cmd->add_option("--order", common.order, "Series truncation order");

  double lo = 1e-3, hi = 0.1;
  int samples = 40, J = 8;
  std::string side = "pos";
  auto* rm_cmd = app.add_subcommand("returnmap", "Sample the Poincare return map");
  rm_cmd->add_option("file", file, "PVF system file")->required();
  rm_cmd->add_option("--x0-min", lo)->capture_default_str();
  rm_cmd->add_option("--x0-max", hi)->capture_default_str();
  rm_cmd->add_option("--samples", samples)->capture_default_str();
  rm_cmd->add_option("--side", side)->check(CLI::IsMember({"pos", "neg", "both"}))->capture_default_str();
  rm_cmd->add_option("--fit-terms", J, "Number of fitted focal values")->capture_default_str();

  double r_max = 0.3, r_min = 0.0;
  int grid = 60;
  auto* cyc_cmd = app.add_subcommand("cycles", "Count limit cycles near the origin");
  cyc_cmd->add_option("file", file, "PVF system file")->required();
  cyc_cmd->add_option("--rmax", r_max)->capture_default_str();
  cyc_cmd->add_option("--rmin", r_min, "Inner radius; 0 picks rmax/1000")->capture_default_str();
  cyc_cmd->add_option("--grid", grid)->capture_default_str();

  int k = 1, start = 1, sign = -1;
  std::string eps = "1", ratio = "1/20";
  auto* unf_cmd = app.add_subcommand("unfold", "Parameter ladder producing k limit cycles");
  unf_cmd->add_option("file", file, "PVF lienard family")->required();
  unf_cmd->add_option("--k", k)->capture_default_str();
  unf_cmd->add_option("--eps", eps, "Top |B|, rational or decimal")->capture_default_str();
  unf_cmd->add_option("--ratio", ratio, "Rung ratio in (0, 1)")->capture_default_str();
  unf_cmd->add_option("--start", start, "Odd index of the lowest rung")->capture_default_str();
  unf_cmd->add_option("--sign", sign, "Sign of the top rung")->check(CLI::IsMember({-1, 1}))->capture_default_str();

  std::string id, config;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a committed experiment");
  exp_cmd->add_option("id", id)->required()->check(CLI::IsMember(experiment_ids()));
  exp_cmd->add_option("--config", config, "JSON config overriding defaults");

  auto* self_cmd = app.add_subcommand("selftest", "Invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*classify_cmd) return cmd_classify(file, common);
    if (*focal_cmd) return cmd_focal(file, common);
    if (*rm_cmd) return cmd_returnmap(file, lo, hi, samples, side, J, common);
    if (*cyc_cmd) return cmd_cycles(file, r_max, grid, r_min, common);
    if (*unf_cmd) return cmd_unfold(file, k, eps, ratio, start, sign, common);
    if (*exp_cmd) return cmd_experiment(id, config, common);
    if (*self_cmd) return cmd_experiment("selftest", "", common);
  } catch (const Error& e) {
    std::cerr << "nilcycle: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
