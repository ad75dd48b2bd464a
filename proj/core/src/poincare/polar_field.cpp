#include "nilcycle/poincare/polar_field.hpp"

#include <cmath>
#include <string>

#include "nilcycle/error.hpp"

namespace nilcycle {

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double tail_size(const TruncatedSeries& F, double radius) {
  // Several trailing terms: odd or even series leave every other coefficient zero.
  double worst = 0.0;
  for (int k = std::max(0, F.order() - 3); k <= F.order(); ++k) {
    worst = std::max(worst, std::abs(to_double(F[k])) * std::pow(radius, k));
  }
  return worst;
}

}  // namespace

PolarField::PolarField(const PlanarSystem& sys, PolarOptions options)
    : n_(classify(sys).n), options_(options) {
  build(sys);
}

PolarField::PolarField(const PlanarSystem& sys, int n, PolarOptions options)
    : n_(n), options_(options) {
  build(sys);
}

void PolarField::build(const PlanarSystem& sys) {
  int order = sys.series_order;
  section_ = section_curve(sys, order);
  while (tail_size(section_, options_.validity_radius) > options_.section_tail &&
         order < options_.max_series_order) {
    order = std::min(2 * order, options_.max_series_order);
    section_ = section_curve(sys, order);
  }
  F_ = to_doubles(section_);
  dF_ = to_doubles(differentiate(section_));
  X_ = NumericPolynomial(sys.X);
  Y_ = NumericPolynomial(sys.Y);
}

PolarField::Velocity PolarField::cartesian(double x, double y) const {
  return {y + X_(x, y), Y_(x, y)};
}

double PolarField::section_value(double x) const { return horner(F_, x); }

double PolarField::section_slope(double x) const { return horner(dF_, x); }

double PolarField::normalized_denominator(double theta, double r) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double x = r * c;
  const double rn1 = ipow(r, n_ - 1);
  const double v = rn1 * r * s;
  const double y = v + section_value(x);
  const auto vel = cartesian(x, y);
  const double vdot = vel.ydot - section_slope(x) * vel.xdot;
  const double den = c * vdot - n_ * rn1 * s * vel.xdot;
  return den / std::abs(ipow(r, 2 * n_ - 1));
}

double PolarField::rhs(double theta, double r) const {
  if (r == 0.0) return 0.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double x = r * c;
  const double rn1 = ipow(r, n_ - 1);
  const double v = rn1 * r * s;
  const double y = v + section_value(x);
  const auto vel = cartesian(x, y);
  const double vdot = vel.ydot - section_slope(x) * vel.xdot;
  const double num = s * vdot + rn1 * c * vel.xdot;
  const double den = c * vdot - n_ * rn1 * s * vel.xdot;
  if (!(std::abs(den) >= options_.eps_den * std::abs(ipow(r, 2 * n_ - 1)))) {
    throw Error(ErrorCode::kDenominatorNearZero,
                "theta = " + std::to_string(theta) + ", r = " + std::to_string(r));
  }
  return r * num / den;
}

double integrate_r(const PolarField& field, double theta0, double theta1, double h,
                   IntegrationStats* stats) {
  if (std::abs(h) > field.options().validity_radius) {
    throw Error(ErrorCode::kDenominatorNearZero,
                "initial radius " + std::to_string(h) + " beyond validity radius");
  }
  auto rhs = [&field](double theta, const std::array<double, 1>& r) {
    return std::array<double, 1>{field.rhs(theta, r[0])};
  };
  return integrate_adaptive<1>(rhs, {h}, theta0, theta1, field.options().tolerances, stats)[0];
}

}  // namespace nilcycle
