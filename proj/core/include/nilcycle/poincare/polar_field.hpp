#pragma once

#include <vector>

#include "nilcycle/poincare/integrator.hpp"
#include "nilcycle/series/bivariate.hpp"
#include "nilcycle/system/planar_system.hpp"

namespace nilcycle {

struct PolarOptions {
  /// Largest radius the field will be evaluated at.
  double validity_radius = 0.5;
  /// dr/dtheta is refused when |denominator| < eps_den |r|^{2n-1}.
  double eps_den = 1e-8;
  /// Bound on the last retained section-curve term at the validity radius.
  double section_tail = 1e-16;
  int max_series_order = 160;
  Tolerances tolerances{};
};

/// The field in shifted coordinates v = y - F(x) and generalized polar
/// coordinates x = r cos(theta), v = r^n sin(theta), where theta is a
/// monotone clock near a monodromic origin.
class PolarField {
 public:
  PolarField(const PlanarSystem& sys, PolarOptions options = {});
  PolarField(const PlanarSystem& sys, int n, PolarOptions options);

  int n() const noexcept { return n_; }
  const PolarOptions& options() const noexcept { return options_; }
  const TruncatedSeries& section() const noexcept { return section_; }
  int section_order() const noexcept { return section_.order(); }

  struct Velocity {
    double xdot;
    double ydot;
  };

  /// Original field (x', y') at a Cartesian point.
  Velocity cartesian(double x, double y) const;

  double section_value(double x) const;
  double section_slope(double x) const;

  /// dr/dtheta. Throws Error(kDenominatorNearZero) outside the monodromic annulus.
  double rhs(double theta, double r) const;

  /// Normalized angular speed S / |r|^{2n-1} sign; negative inside the annulus.
  double normalized_denominator(double theta, double r) const;

 private:
  void build(const PlanarSystem& sys);

  int n_;
  PolarOptions options_;
  TruncatedSeries section_;
  std::vector<double> F_;
  std::vector<double> dF_;
  NumericPolynomial X_;
  NumericPolynomial Y_;
};

/// r(theta1) for dr/dtheta = rhs with r(theta0) = h.
double integrate_r(const PolarField& field, double theta0, double theta1, double h,
                   IntegrationStats* stats = nullptr);

}  // namespace nilcycle
