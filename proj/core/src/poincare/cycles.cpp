#include "nilcycle/poincare/cycles.hpp"

#include <cmath>
#include <numbers>

#include "nilcycle/error.hpp"

namespace nilcycle {

bool CycleSet::all_paired() const {
  for (const auto& r : roots) {
    if (!r.paired_negative) return false;
  }
  return true;
}

namespace {

int sign_of(double v) { return (v > 0) - (v < 0); }

std::optional<double> bisect(const std::function<std::optional<double>(double)>& d, double lo,
                             double hi, double d_lo, double tol) {
  for (int it = 0; it < 200 && std::abs(hi - lo) > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const auto dm = d(mid);
    if (!dm) return std::nullopt;
    if (*dm == 0.0) return mid;
    if (sign_of(*dm) == sign_of(d_lo)) {
      lo = mid;
      d_lo = *dm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::optional<double> safe_d(const PolarField& field, double x0) {
  try {
    return return_map(field, x0).d;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDenominatorNearZero || e.code() == ErrorCode::kStepUnderflow) {
      return std::nullopt;
    }
    throw;
  }
}

std::optional<double> pair_negative(const PolarField& field, double x_pos, double tol) {
  double half;
  try {
    half = integrate_r(field, 0.0, -std::numbers::pi, x_pos);
  } catch (const Error&) {
    return std::nullopt;
  }
  const double x_neg = -half;
  auto d = [&field](double x) { return safe_d(field, x); };
  for (double w : {1e-4, 1e-3, 1e-2, 5e-2}) {
    const double a = x_neg * (1.0 + w);
    const double b = x_neg * (1.0 - w);
    const auto da = d(a);
    const auto db = d(b);
    if (!da || !db) continue;
    if (sign_of(*da) == 0) return a;
    if (sign_of(*da) * sign_of(*db) < 0) {
      const auto root = bisect(d, a, b, *da, tol);
      if (root && std::abs(*root - x_neg) <= std::max(1e-7, 1e-5 * std::abs(x_neg))) return root;
    }
  }
  return std::nullopt;
}

}  // namespace

CycleSet bracket_and_refine(const std::function<std::optional<double>(double)>& d,
                            const std::vector<double>& grid, double tol, double noise_floor) {
  CycleSet set;
  if (!grid.empty()) {
    set.r_min = grid.front();
    set.r_max = grid.back();
  }
  // Last point with a definite sign; points inside the noise band are
  // skipped so a bracket may span several of them.
  double prev_x = 0.0;
  int prev_s = 0;
  for (double x : grid) {
    const auto value = d(x);
    if (!value) {
      prev_s = 0;
      continue;
    }
    set.scan.emplace_back(x, *value);
    const int s = std::abs(*value) <= noise_floor * std::abs(x) ? 0 : sign_of(*value);
    if (s == 0) continue;
    if (prev_s != 0 && prev_s != s) {
      set.brackets.push_back({prev_x, x, prev_s > 0 ? Crossing::kPlusToMinus : Crossing::kMinusToPlus});
    }
    prev_x = x;
    prev_s = s;
  }
  for (const auto& b : set.brackets) {
    const auto d_lo = d(b.lo);
    const auto root = d_lo ? bisect(d, b.lo, b.hi, *d_lo, tol) : std::nullopt;
    if (root) set.roots.push_back({*root, b.crossing, std::nullopt});
  }
  set.count = static_cast<int>(set.roots.size());
  return set;
}

CycleSet count_cycles(const PolarField& field, double r_max, int grid, CycleOptions options) {
  std::vector<std::string> warnings;
  double hi = std::min(r_max, field.options().validity_radius);
  if (hi < r_max) {
    warnings.push_back("r_max clipped to validity radius " + format_float(hi));
  }
  const double lo = options.r_min > 0 ? options.r_min : hi * 1e-3;
  auto d = [&field](double x) { return safe_d(field, x); };
  std::vector<double> points = geometric_grid(lo, hi, grid);
  // Shrink the outer end past any failing evaluations.
  while (points.size() > 2 && !d(points.back())) {
    warnings.push_back("return map failed at x0 = " + format_float(points.back()) + "; shrinking r_max");
    points.pop_back();
  }
  CycleSet set = bracket_and_refine(d, points, options.root_tol, options.noise_floor);
  set.warnings.insert(set.warnings.begin(), warnings.begin(), warnings.end());
  if (options.pair_negative) {
    for (auto& root : set.roots) root.paired_negative = pair_negative(field, root.x, options.root_tol);
  }
  return set;
}

std::vector<std::pair<double, double>> orbit_polyline(const PolarField& field, double x0, int points) {
  std::vector<std::pair<double, double>> out;
  const int n = field.n();
  double r = x0;
  double theta = 0.0;
  for (int k = 0; k <= points; ++k) {
    const double next = -2.0 * std::numbers::pi * k / points;
    if (k > 0) r = integrate_r(field, theta, next, r);
    theta = next;
    const double x = r * std::cos(theta);
    const double v = std::pow(r, n) * std::sin(theta);
    out.emplace_back(x, v + field.section_value(x));
  }
  return out;
}

}  // namespace nilcycle
