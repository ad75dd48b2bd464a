#include "nilcycle/poincare/cs_sn.hpp"

#include <cmath>
#include <numbers>

namespace nilcycle {

namespace {

// Tighter than the return-map default: the energy identity is checked at 1e-10
// over three periods.
constexpr Tolerances kTrigTolerances{1e-14, 1e-16, 1e-15, 2'000'000};

std::array<double, 2> trig_rhs(int n, const std::array<double, 2>& s) {
  return {s[1], -std::pow(s[0], 2 * n - 1)};
}

}  // namespace

CsSn cs_sn(int n, double t) { return cs_sn(n, t, kTrigTolerances); }

CsSn cs_sn(int n, double t, const Tolerances& tol) {
  auto rhs = [n](double, const std::array<double, 2>& s) { return trig_rhs(n, s); };
  const auto s = integrate_adaptive<2>(rhs, {1.0, 0.0}, 0.0, t, tol);
  return {s[0], s[1]};
}

double period_T(int n) {
  const double dn = static_cast<double>(n);
  return 2.0 * std::sqrt(std::numbers::pi / dn) * std::tgamma(1.0 / (2.0 * dn)) /
         std::tgamma((dn + 1.0) / (2.0 * dn));
}

double measured_period(int n) {
  auto rhs = [n](double, const std::array<double, 2>& s) { return trig_rhs(n, s); };
  // Sn < 0 on (0, T/2) and Sn > 0 on (T/2, T); march in coarse steps until
  // Sn turns negative again after having been positive.
  const double dt = 0.05;
  std::array<double, 2> s{1.0, 0.0};
  double t = 0.0;
  bool seen_positive = false;
  for (;;) {
    const auto next = integrate_adaptive<2>(rhs, s, t, t + dt, kTrigTolerances);
    if (next[1] > 0) seen_positive = true;
    if (seen_positive && next[1] <= 0) break;
    s = next;
    t += dt;
  }
  // Newton on Sn(t) = 0 with Sn' = -Cs^{2n-1}.
  for (int it = 0; it < 8; ++it) {
    const double slope = -std::pow(s[0], 2 * n - 1);
    const double step = -s[1] / slope;
    if (std::abs(step) < 1e-15) break;
    s = integrate_adaptive<2>(rhs, s, t, t + step, kTrigTolerances);
    t += step;
  }
  return t;
}

double energy_drift(int n, double t_max, int samples) {
  auto rhs = [n](double, const std::array<double, 2>& s) { return trig_rhs(n, s); };
  std::array<double, 2> s{1.0, 0.0};
  double worst = 0.0;
  double t = 0.0;
  for (int k = 1; k <= samples; ++k) {
    const double next_t = t_max * k / samples;
    s = integrate_adaptive<2>(rhs, s, t, next_t, kTrigTolerances);
    t = next_t;
    const double e = std::pow(s[0], 2 * n) + n * s[1] * s[1] - 1.0;
    worst = std::max(worst, std::abs(e));
  }
  return worst;
}

}  // namespace nilcycle
