#pragma once

#include <vector>

#include "nilcycle/poincare/polar_field.hpp"

namespace nilcycle {

/// Forward-time Cartesian simulation from (x0, F(x0)), x0 > 0.
///
/// Returns the x coordinates of the first `crossings` returns to the
/// section curve on the positive side (downward crossings of y = F(x)).
/// Independent of the polar return map: integrates x', y' directly in t.
std::vector<double> forward_crossings(const PolarField& field, double x0, int crossings,
                                      const Tolerances& tol = {});

enum class FlowTrend { kContracting, kExpanding, kNeutral };

/// Contracting when the last crossing is closer to the origin than x0.
FlowTrend forward_trend(const PolarField& field, double x0, int crossings, double neutral_tol = 1e-12);

}  // namespace nilcycle
