#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcycle/bifurcation/unfold.hpp"
#include "nilcycle/focal/lienard.hpp"
#include "nilcycle/poincare/cycles.hpp"
#include "nilcycle/poincare/return_map.hpp"
#include "nilcycle/system/planar_system.hpp"

namespace nilcycle {

struct CriterionResult {
  /// Acceptance criterion id, e.g. "AC7".
  std::string id;
  std::string description;
  bool pass = false;
  std::string detail;
};

template <class T>
using Named = std::vector<std::pair<std::string, T>>;

/// Everything a command or experiment produced. Sections stay empty when
/// unused; the renderers skip them.
struct ExperimentReport {
  std::string experiment;
  Named<std::string> inputs;
  std::optional<NilpotentClass> classification;
  std::optional<FocalReport> focal;
  std::optional<Stability> filippov;
  Named<FittedFocal> fits;
  Named<CycleSet> cycles;
  Named<UnfoldingPlan> plans;
  Named<ReturnMapTable> tables;
  Named<std::vector<std::pair<double, double>>> polylines;
  Named<double> metrics;
  std::vector<CriterionResult> criteria;
  std::vector<std::string> notes;
  /// Files written by emit_report, relative to the output directory.
  std::vector<std::string> artifacts;

  bool passed() const;
};

enum class ReportFormat { kJson, kCsv, kPlotData };

/// Deterministic JSON: insertion-ordered keys, rationals as "p/q" strings,
/// floats with 17 significant digits, non-finite floats as null.
std::string render_json(const ExperimentReport& report);

/// Gnuplot-style blocks: return-map (x0, d) columns, cycle brackets and
/// orbit polylines, separated by two blank lines.
std::string render_plotdata(const ExperimentReport& report);

/// Writes the requested formats into `dir` (created if missing) and records
/// the file names in `report.artifacts`. JSON is written last so it lists
/// the other artifacts. Throws Error(kIoError) on write failure.
void emit_report(ExperimentReport& report, const std::vector<ReportFormat>& formats,
                 const std::filesystem::path& dir);

}  // namespace nilcycle
