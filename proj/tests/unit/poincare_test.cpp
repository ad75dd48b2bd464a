#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "nilcycle/error.hpp"
#include "nilcycle/poincare/cs_sn.hpp"
#include "nilcycle/poincare/cycles.hpp"
#include "nilcycle/poincare/polar_field.hpp"
#include "nilcycle/poincare/return_map.hpp"
#include "nilcycle/poincare/simulate.hpp"

using namespace nilcycle;

namespace {

constexpr double kPi = std::numbers::pi;

// Period by quadrature: T = 4 sqrt(n) int_0^1 dx / sqrt(1 - x^{2n}), with
// x = 1 - s^2 removing the endpoint singularity. Composite Simpson.
double quadrature_period(int n) {
  const int m = 200000;
  auto integrand = [n](double s) {
    if (s == 0.0) return 2.0 / std::sqrt(2.0 * n);
    const double x = 1.0 - s * s;
    return 2.0 * s / std::sqrt(1.0 - std::pow(x, 2 * n));
  };
  double sum = integrand(0.0) + integrand(1.0);
  const double h = 1.0 / m;
  for (int i = 1; i < m; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * h);
  return 4.0 * std::sqrt(static_cast<double>(n)) * sum * h / 3.0;
}

PlanarSystem lienard(std::vector<Rational> g, std::vector<Rational> f) {
  return make_lienard(TruncatedSeries(std::move(g), 20), TruncatedSeries(std::move(f), 20), 20);
}

}  // namespace

TEST_CASE("Cs/Sn for n = 1 is the circular pair of the defining system") {
  for (double t : {0.3, 1.7, 4.0, 9.5}) {
    const CsSn v = cs_sn(1, t);
    CHECK(std::abs(v.cs - std::cos(t)) <= 1e-10);
    CHECK(std::abs(v.sn + std::sin(t)) <= 1e-10);
  }
  const CsSn start = cs_sn(2, 0.0);
  CHECK(start.cs == 1.0);
  CHECK(start.sn == 0.0);
}

TEST_CASE("closed-form and measured periods agree") {
  CHECK(std::abs(period_T(1) - 2 * kPi) <= 1e-12);
  CHECK(std::abs(period_T(2) - 7.416298) <= 1e-6);
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    CHECK(std::abs(period_T(n) - quadrature_period(n)) <= 1e-6);
    CHECK(std::abs(measured_period(n) - period_T(n)) <= 1e-6);
  }
}

TEST_CASE("energy identity over three periods") {
  for (int n = 1; n <= 3; ++n) CHECK(energy_drift(n, 3 * period_T(n), 60) <= 1e-10);
}

TEST_CASE("polar field at theta = pi/2 for a pure cubic center") {
  const PolarField field(lienard({0, 0, 0, 1}, {0}));
  for (double r : {0.01, 0.05, 0.2}) CHECK(std::abs(field.rhs(kPi / 2, r)) <= 1e-15);
}

TEST_CASE("polar field reflection symmetry") {
  for (int n : {2, 3}) {
    std::vector<Rational> g(static_cast<std::size_t>(2 * n + 1));
    g[static_cast<std::size_t>(2 * n - 1)] = 1;
    g[static_cast<std::size_t>(2 * n)] = Rational(1, 3);
    const PolarField field(lienard(g, {0, Rational(1, 2), 1}));
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    for (double theta : {0.3, 1.1, 2.5, 4.0}) {
      for (double r : {0.02, 0.08}) {
        const double lhs = field.rhs(kPi + (n % 2 == 1 ? theta : -theta), -r);
        CHECK(std::abs(lhs - sign * field.rhs(theta, r)) <= 1e-12 * (1 + std::abs(lhs)));
      }
    }
  }
}

TEST_CASE("pure cubic center returns to its start") {
  const PolarField field(lienard({0, 0, 0, 1}, {0}));
  for (double h : {0.01, 0.05, 0.1}) CHECK(std::abs(integrate_r(field, 0, -2 * kPi, h) - h) <= 1e-10);
  for (double x0 : {0.02, 0.1}) CHECK(std::abs(return_map(field, x0).d) <= 1e-9);
}

TEST_CASE("negative side return inverts the backward map for even n") {
  const PolarField field(lienard({0, 0, 0, 1}, {0, 0, 1}));
  for (double x0 : {-0.03, -0.08}) {
    const double P = integrate_r(field, 0, 2 * kPi, x0);
    CHECK(std::abs(integrate_r(field, 0, -2 * kPi, P) - x0) <= 1e-9);
  }
}

TEST_CASE("small constant damping gives a contracting return") {
  // Larger b0 turns the origin into a node before the clock is monotone.
  const PolarField field(lienard({0, 0, 0, 1}, {Rational(1, 1000)}));
  for (double x0 : {0.02, 0.05, 0.1}) CHECK(return_map(field, x0).d < 0);
  CHECK(forward_trend(field, 0.05, 3) == FlowTrend::kContracting);
}

TEST_CASE("the denominator guard raises a typed error far from the origin") {
  PolarOptions opts;
  opts.validity_radius = 10.0;
  const PolarField field(lienard({0, 0, 0, 1}, {0, 10}), opts);
  CHECK_THROWS_AS(return_map(field, 5.0), Error);
}

TEST_CASE("polynomial fit recovers a synthetic cubic") {
  const double c3 = -0.37;
  std::vector<ReturnSample> samples;
  for (int i = 1; i <= 40; ++i) {
    const double x = i / 40.0;
    samples.push_back({x, x + c3 * x * x * x, c3 * x * x * x});
  }
  const FittedFocal fit = fit_focal(samples);
  REQUIRE(fit.v.size() == 8);
  for (int j = 1; j <= 8; ++j) {
    CAPTURE(j);
    CHECK(std::abs(fit.at(j) - (j == 3 ? c3 : 0.0)) <= 1e-12);
  }
}

TEST_CASE("geometric grid endpoints and CSV header") {
  const auto grid = geometric_grid(1e-3, 0.1, 5);
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(0.1));
  CHECK(grid[2] == doctest::Approx(1e-2));
  ReturnMapTable table;
  table.samples.push_back({0.5, 0.25, -0.25});
  std::ostringstream os;
  write_csv(os, table);
  CHECK(os.str().rfind("x0,P,d\n", 0) == 0);
  CHECK(os.str().find("0.5,0.25,-0.25") != std::string::npos);
}

TEST_CASE("bracketing finds both sign changes of a synthetic displacement") {
  auto d = [](double x) -> std::optional<double> { return (x - 0.05) * (x - 0.12) * x; };
  const CycleSet set = bracket_and_refine(d, geometric_grid(0.001, 0.3, 50), 1e-12);
  REQUIRE(set.count == 2);
  CHECK(std::abs(set.roots[0].x - 0.05) <= 1e-10);
  CHECK(std::abs(set.roots[1].x - 0.12) <= 1e-10);
  CHECK(set.roots[0].crossing == Crossing::kPlusToMinus);
  CHECK(set.roots[1].crossing == Crossing::kMinusToPlus);
}

TEST_CASE("a center has no isolated cycles") {
  const PolarField field(lienard({0, 0, 0, 1}, {0, 1}));
  CHECK(count_cycles(field, 0.2, 30).count == 0);
}
