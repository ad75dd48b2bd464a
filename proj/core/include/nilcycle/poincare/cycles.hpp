#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nilcycle/poincare/return_map.hpp"

namespace nilcycle {

enum class Crossing { kPlusToMinus, kMinusToPlus };

struct CycleBracket {
  double lo;
  double hi;
  Crossing crossing;
};

struct CycleRoot {
  double x;
  Crossing crossing;
  /// Fixed point of the return map on the negative side belonging to the
  /// same periodic orbit, when the pairing check found one.
  std::optional<double> paired_negative;
};

struct CycleSet {
  std::vector<CycleBracket> brackets;
  std::vector<CycleRoot> roots;
  int count = 0;
  /// Grid values of (x0, d); failed evaluations are absent.
  std::vector<std::pair<double, double>> scan;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<std::string> warnings;

  bool all_paired() const;
};

struct CycleOptions {
  double r_min = 0.0;  // 0 picks r_max * 1e-3
  double root_tol = 1e-10;
  /// |d(x)| <= noise_floor * x carries no sign; keeps a center from
  /// reporting cycles out of round-off.
  double noise_floor = 1e-12;
  bool pair_negative = true;
};

/// Brackets sign changes of d on the grid and bisects each to `tol`.
/// Evaluations returning nullopt are skipped; brackets only join
/// neighbouring successful points.
CycleSet bracket_and_refine(const std::function<std::optional<double>(double)>& d,
                            const std::vector<double>& grid, double tol, double noise_floor = 0.0);

/// Limit cycles as positive fixed points of the return map on a log grid in
/// [r_min, r_max]. A failure at the outer end shrinks r_max with a warning.
CycleSet count_cycles(const PolarField& field, double r_max, int grid, CycleOptions options = {});

/// Closed orbit through (x, F(x)) sampled at `points` angles, in the
/// original Cartesian coordinates.
std::vector<std::pair<double, double>> orbit_polyline(const PolarField& field, double x0, int points);

}  // namespace nilcycle
