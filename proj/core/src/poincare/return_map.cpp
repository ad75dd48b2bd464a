#include "nilcycle/poincare/return_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Dense>

#include "nilcycle/error.hpp"

namespace nilcycle {

ReturnPoint return_map(const PolarField& field, double x0, IntegrationStats* stats) {
  if (x0 == 0.0) return {0.0, 0.0};
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  // theta decreases along orbits; for x0 < 0 and n even the negative-radius
  // branch runs the other way.
  const double theta_end = (x0 < 0 && field.n() % 2 == 0) ? kTwoPi : -kTwoPi;
  const double P = integrate_r(field, 0.0, theta_end, x0, stats);
  return {P, P - x0};
}

std::vector<double> geometric_grid(double lo, double hi, int count) {
  std::vector<double> out;
  if (count <= 0) return out;
  if (count == 1) return {lo};
  const double ratio = std::log(hi / lo) / (count - 1);
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out.push_back(lo * std::exp(ratio * k));
  out.back() = hi;
  return out;
}

ReturnMapTable sample_return_map(const PolarField& field, const std::vector<double>& magnitudes,
                                 Side side) {
  ReturnMapTable table;
  table.side = side;
  table.min_denominator = std::numeric_limits<double>::infinity();
  std::vector<double> xs;
  xs.reserve(magnitudes.size());
  for (double m : magnitudes) xs.push_back(side == Side::kPositive ? std::abs(m) : -std::abs(m));
  std::sort(xs.begin(), xs.end());
  for (double x0 : xs) {
    const auto rp = return_map(field, x0, &table.stats);
    table.samples.push_back({x0, rp.P, rp.d});
    for (int k = 0; k < 16; ++k) {
      const double theta = -2.0 * std::numbers::pi * k / 16.0;
      table.min_denominator = std::min(table.min_denominator,
                                       std::abs(field.normalized_denominator(theta, x0)));
    }
  }
  return table;
}

std::string format_float(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(std::ostream& os, const ReturnMapTable& table) {
  os << "x0,P,d\n";
  for (const auto& s : table.samples) {
    os << format_float(s.x0) << ',' << format_float(s.P) << ',' << format_float(s.d) << '\n';
  }
}

FittedFocal fit_focal(const ReturnMapTable& table, FitOptions options) {
  return fit_focal(table.samples, options);
}

FittedFocal fit_focal(const std::vector<ReturnSample>& samples, FitOptions options) {
  const int J = options.J;
  const auto rows = static_cast<Eigen::Index>(samples.size());
  if (J < 1 || rows < 2 * J) {
    throw Error(ErrorCode::kIllConditionedFit, "need at least 2J samples, have " +
                                                   std::to_string(samples.size()) + " for J = " +
                                                   std::to_string(J));
  }
  double s = 0.0;
  for (const auto& p : samples) s = std::max(s, std::abs(p.x0));

  Eigen::MatrixXd M(rows, J);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& p = samples[static_cast<std::size_t>(i)];
    const double t = p.x0 / s;
    double tp = 1.0;
    for (int j = 0; j < J; ++j) {
      M(i, j) = tp;
      tp *= t;
    }
    rhs(i) = p.d / p.x0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd u = svd.solve(rhs);
  const auto& sv = svd.singularValues();

  FittedFocal fit;
  fit.condition = sv(0) / sv(sv.size() - 1);
  fit.ill_conditioned = !(fit.condition < options.ill_conditioned);
  fit.residual = std::sqrt((M * u - rhs).squaredNorm() / static_cast<double>(rows));
  // Unbiased noise estimate pushed through (M^T M)^{-1} = V S^{-2} V^T.
  const double dof = rows > J ? static_cast<double>(rows - J) : 1.0;
  const double sigma = std::sqrt((M * u - rhs).squaredNorm() / dof);
  const Eigen::MatrixXd& V = svd.matrixV();
  fit.v.resize(static_cast<std::size_t>(J));
  fit.standard_error.resize(static_cast<std::size_t>(J));
  double sp = 1.0;
  for (int j = 0; j < J; ++j) {
    double var = 0.0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) var += std::pow(V(j, k) / sv(k), 2);
    fit.v[static_cast<std::size_t>(j)] = u(j) / sp;
    fit.standard_error[static_cast<std::size_t>(j)] = sigma * std::sqrt(var) / sp;
    sp *= s;
  }
  return fit;
}

double richardson_leading(const std::function<double(double)>& d, int power, double x0, int levels) {
  std::vector<std::vector<double>> R(static_cast<std::size_t>(levels));
  double x = x0;
  for (int i = 0; i < levels; ++i, x *= 0.5) {
    auto& row = R[static_cast<std::size_t>(i)];
    row.push_back(d(x) / std::pow(x, power));
    double factor = 1.0;
    for (int k = 1; k <= i; ++k) {
      factor *= 2.0;
      const double prev = R[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
      row.push_back((factor * row[static_cast<std::size_t>(k - 1)] - prev) / (factor - 1.0));
    }
  }
  return R.back().back();
}

}  // namespace nilcycle
