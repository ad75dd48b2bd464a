#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilcycle/bifurcation/report.hpp"

namespace nilcycle {

/// Identifiers accepted by run_experiment.
const std::vector<std::string>& experiment_ids();

struct ExperimentContext {
  /// Root holding systems/ and configs/; relative paths in configs resolve here.
  std::filesystem::path data_dir;
  /// JSON config overriding the built-in defaults key by key.
  std::optional<std::filesystem::path> config;
};

/// Runs one experiment. Throws Error(kConfigError) for unknown ids,
/// unreadable or malformed configs and missing referenced files.
ExperimentReport run_experiment(std::string_view id, const ExperimentContext& ctx);

/// Kukles system x' = y, y' = -a11 x y - a02 y^2 - a30 x^3 - a21 x^2 y
///   - a12 x y^2 - a03 y^3 written in the normalized orientation.
PlanarSystem make_kukles(const Rational& a11, const Rational& a02, const Rational& a30,
                         const Rational& a21, const Rational& a12, const Rational& a03);

}  // namespace nilcycle
