#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcycle/series/rational.hpp"
#include "nilcycle/system/planar_system.hpp"

namespace nilcycle {

struct UnfoldOptions {
  /// Number of limit cycles the ladder should produce.
  int k = 1;
  /// |B| of the top rung.
  Rational eps{1};
  /// |B_lower| = ratio * |B_next| down the ladder.
  Rational ratio{1, 20};
  /// Optional per-rung ratios listed from the top rung down, each in
  /// (0, ratio]. Deeper rungs often need a smaller step than the shared ratio
  /// for the cycles to separate.
  std::vector<Rational> rung_ratios;
  /// Sign of the top rung; the rungs below alternate.
  int top_sign = -1;
  /// Odd index of the lowest rung. 1 includes the node-range coefficient B_1.
  int start_index = 1;
  bool estimate_rank = true;
};

/// Parameter choice realizing an alternating-magnitude ladder of focal
/// coefficients B_{s}, B_{s+2}, ..., B_{s+2k} (s = start index).
///
/// The free parameters are the f coefficients b_{i-1} for every ladder
/// index i; B depends linearly on f, so the solve is exact.
struct UnfoldingPlan {
  int target_count = 0;
  Rational eps;
  Rational ratio;
  std::vector<int> ladder_indices;
  std::vector<Rational> target_B;
  std::vector<std::pair<std::string, Rational>> assignments;
  /// Finite-difference rank of d(B_{s}, ..., B_{s+2k-2}) / d(parameters).
  std::optional<int> jacobian_rank;
  std::vector<double> singular_values;
  PlanarSystem realized;
};

/// Throws Error(kUnachievableLadder) when the family is not Liénard-kind or
/// the linear map from parameters to ladder coefficients is singular.
UnfoldingPlan unfold(const PlanarSystem& family, const UnfoldOptions& options);

/// Checks alternating signs and |B_lower| <= ratio |B_next| on the
/// coefficients recomputed from `plan.realized`.
bool ladder_holds(const UnfoldingPlan& plan);

/// Exact solve of a square rational system; nullopt when singular.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b);

}  // namespace nilcycle
