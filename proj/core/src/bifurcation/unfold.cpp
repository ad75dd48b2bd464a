#include "nilcycle/bifurcation/unfold.hpp"

#include <Eigen/Dense>

#include "nilcycle/error.hpp"
#include "nilcycle/focal/lienard.hpp"

namespace nilcycle {

std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(A[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(A[pivot], A[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || sgn(A[row][col]) == 0) continue;
      const Rational factor = A[row][col] / A[col][col];
      for (std::size_t k = col; k < n; ++k) A[row][k] -= factor * A[col][k];
      b[row] -= factor * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

namespace {

std::string parameter_name(int degree) { return "b" + std::to_string(degree); }

Rational coefficient_at(const std::vector<Rational>& B, int index) {
  return index >= 1 && index <= static_cast<int>(B.size()) ? B[static_cast<std::size_t>(index - 1)] : Rational(0);
}

}  // namespace

UnfoldingPlan unfold(const PlanarSystem& family, const UnfoldOptions& options) {
  if (family.kind != SystemKind::kLienard) {
    throw Error(ErrorCode::kUnachievableLadder, "unfolding needs a lienard-kind family");
  }
  if (options.k < 0 || options.start_index < 1 || options.start_index % 2 == 0) {
    throw Error(ErrorCode::kUnachievableLadder, "k must be >= 0 and the start index odd");
  }
  if (sgn(options.eps) <= 0 || sgn(options.ratio) <= 0 || options.ratio >= 1) {
    throw Error(ErrorCode::kUnachievableLadder, "need eps > 0 and 0 < ratio < 1");
  }

  for (const auto& q : options.rung_ratios) {
    if (sgn(q) <= 0 || q > options.ratio) {
      throw Error(ErrorCode::kUnachievableLadder, "rung ratios must lie in (0, ratio]");
    }
  }
  if (!options.rung_ratios.empty() && static_cast<int>(options.rung_ratios.size()) != options.k) {
    throw Error(ErrorCode::kUnachievableLadder, "need one rung ratio per step below the top");
  }

  UnfoldingPlan plan;
  plan.target_count = options.k;
  plan.eps = options.eps;
  plan.ratio = options.ratio;
  plan.realized = family;
  if (options.k == 0) return plan;

  const LienardParts parts = lienard_parts(family);
  const int rungs = options.k + 1;
  for (int m = 0; m < rungs; ++m) plan.ladder_indices.push_back(options.start_index + 2 * m);

  // Targets from the top down: top_sign * eps, then alternate with ratio.
  plan.target_B.assign(static_cast<std::size_t>(rungs), Rational(0));
  Rational current = options.eps * (options.top_sign < 0 ? -1 : 1);
  for (int m = rungs - 1; m >= 0; --m) {
    plan.target_B[static_cast<std::size_t>(m)] = current;
    const int step = rungs - 1 - m;
    current = -current * (options.rung_ratios.empty() ? options.ratio : options.rung_ratios[static_cast<std::size_t>(std::min(step, options.k - 1))]);
  }

  // B = B_fixed + L * b_params, exact and linear in f.
  TruncatedSeries f_fixed = parts.f;
  std::vector<int> degrees;
  for (int i : plan.ladder_indices) {
    degrees.push_back(i - 1);
    f_fixed.set(i - 1, Rational(0));
  }
  const auto B_fixed = focal_coefficients(parts.g, f_fixed);
  if (plan.ladder_indices.back() > static_cast<int>(B_fixed.size())) {
    throw Error(ErrorCode::kUnachievableLadder, "ladder top beyond the series order");
  }
  std::vector<std::vector<Rational>> L(static_cast<std::size_t>(rungs), std::vector<Rational>(static_cast<std::size_t>(rungs)));
  for (int c = 0; c < rungs; ++c) {
    const auto unit = TruncatedSeries::monomial(Rational(1), degrees[static_cast<std::size_t>(c)], parts.f.order());
    const auto column = focal_coefficients(parts.g, unit);
    for (int r = 0; r < rungs; ++r) {
      L[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = coefficient_at(column, plan.ladder_indices[static_cast<std::size_t>(r)]);
    }
  }
  std::vector<Rational> rhs(static_cast<std::size_t>(rungs));
  for (int r = 0; r < rungs; ++r) {
    rhs[static_cast<std::size_t>(r)] = plan.target_B[static_cast<std::size_t>(r)] -
                                       coefficient_at(B_fixed, plan.ladder_indices[static_cast<std::size_t>(r)]);
  }
  const auto params = solve_exact(L, rhs);
  if (!params) {
    throw Error(ErrorCode::kUnachievableLadder, "parameters do not control the ladder coefficients");
  }

  TruncatedSeries f_realized = f_fixed;
  for (int c = 0; c < rungs; ++c) {
    const int deg = degrees[static_cast<std::size_t>(c)];
    f_realized.set(deg, (*params)[static_cast<std::size_t>(c)]);
    plan.assignments.emplace_back(parameter_name(deg), (*params)[static_cast<std::size_t>(c)]);
  }
  plan.realized = make_lienard(parts.g, f_realized, family.series_order, family.label + "-unfolded");

  if (options.estimate_rank) {
    // Central differences of the lower rungs with respect to every parameter.
    const double step = 1e-6;
    const int lower = rungs - 1;
    Eigen::MatrixXd J(lower, rungs);
    for (int c = 0; c < rungs; ++c) {
      const int deg = degrees[static_cast<std::size_t>(c)];
      TruncatedSeries plus = f_realized;
      TruncatedSeries minus = f_realized;
      plus.set(deg, f_realized[deg] + rational_from_double(step));
      minus.set(deg, f_realized[deg] - rational_from_double(step));
      const auto Bp = focal_coefficients(parts.g, plus);
      const auto Bm = focal_coefficients(parts.g, minus);
      for (int r = 0; r < lower; ++r) {
        const int idx = plan.ladder_indices[static_cast<std::size_t>(r)];
        J(r, c) = (to_double(coefficient_at(Bp, idx)) - to_double(coefficient_at(Bm, idx))) / (2 * step);
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      plan.singular_values.push_back(svd.singularValues()(i));
      if (svd.singularValues()(i) > 1e-8) ++rank;
    }
    plan.jacobian_rank = rank;
  }
  return plan;
}

bool ladder_holds(const UnfoldingPlan& plan) {
  if (plan.ladder_indices.empty()) return true;
  const LienardParts parts = lienard_parts(plan.realized);
  const auto B = focal_coefficients(parts.g, parts.f);
  for (std::size_t m = 0; m + 1 < plan.ladder_indices.size(); ++m) {
    const Rational lower = coefficient_at(B, plan.ladder_indices[m]);
    const Rational upper = coefficient_at(B, plan.ladder_indices[m + 1]);
    if (sgn(lower) == 0 || sgn(lower) == sgn(upper)) return false;
    if (abs(lower) > plan.ratio * abs(upper)) return false;
  }
  return sgn(coefficient_at(B, plan.ladder_indices.back())) != 0;
}

}  // namespace nilcycle
