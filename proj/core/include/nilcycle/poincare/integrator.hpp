#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "nilcycle/error.hpp"

namespace nilcycle {

struct Tolerances {
  double rtol = 1e-12;
  double atol = 1e-14;
  double min_step = 1e-15;
  long max_steps = 2'000'000;
  /// When positive, take equal steps no longer than this and skip error
  /// control. The global error then varies smoothly with the initial data,
  /// which keeps least-squares fits of return-map samples free of the jitter
  /// adaptive step changes introduce.
  double fixed_step = 0.0;
};

struct IntegrationStats {
  long steps = 0;
  long rejected = 0;
  long rhs_calls = 0;

  IntegrationStats& operator+=(const IntegrationStats& o) {
    steps += o.steps;
    rejected += o.rejected;
    rhs_calls += o.rhs_calls;
    return *this;
  }
};

/// Adaptive embedded Runge-Kutta-Fehlberg 7(8) integration of
/// dx/dt = rhs(t, x) from t0 to t1 (either direction). The step controller
/// is local so the step sequence is deterministic for fixed inputs.
///
/// Throws Error(kStepUnderflow) when the step falls below `tol.min_step`;
/// exceptions from `rhs` propagate unchanged.
template <std::size_t N, typename Rhs>
std::array<double, N> integrate_adaptive(Rhs&& rhs, std::array<double, N> x, double t0, double t1,
                                         const Tolerances& tol, IntegrationStats* stats = nullptr) {
  using State = std::array<double, N>;
  boost::numeric::odeint::runge_kutta_fehlberg78<State> stepper;
  IntegrationStats local;
  auto system = [&](const State& s, State& dsdt, double t) {
    ++local.rhs_calls;
    dsdt = rhs(t, s);
  };

  const double span = t1 - t0;
  if (span == 0.0) return x;
  const double dir = span > 0 ? 1.0 : -1.0;
  if (tol.fixed_step > 0.0) {
    const auto count = static_cast<long>(std::ceil(std::abs(span) / tol.fixed_step));
    const double step = span / static_cast<double>(count);
    State err;
    for (long k = 0; k < count; ++k) {
      stepper.do_step(system, x, t0 + step * static_cast<double>(k), step, err);
      ++local.steps;
    }
    if (stats) *stats += local;
    return x;
  }
  double h = dir * std::min(std::abs(span), 1e-2 * std::max(1.0, std::abs(span)));
  double t = t0;
  State trial;
  State err;
  while (dir * (t1 - t) > 0) {
    if (dir * (t + h - t1) > 0) h = t1 - t;
    trial = x;
    stepper.do_step(system, trial, t, h, err);
    double ratio = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double scale = tol.atol + tol.rtol * std::max(std::abs(x[i]), std::abs(trial[i]));
      ratio = std::max(ratio, std::abs(err[i]) / scale);
    }
    if (!std::isfinite(ratio)) ratio = 1e10;
    if (ratio <= 1.0) {
      t = (dir * (t + h - t1) >= 0) ? t1 : t + h;
      x = trial;
      ++local.steps;
    } else {
      ++local.rejected;
    }
    const double factor = ratio == 0.0 ? 4.0 : std::clamp(0.9 * std::pow(ratio, -1.0 / 8.0), 0.2, 4.0);
    h *= factor;
    if (std::abs(h) < tol.min_step && dir * (t1 - t) > tol.min_step) {
      throw Error(ErrorCode::kStepUnderflow, "step " + std::to_string(std::abs(h)) + " at t = " +
                                                 std::to_string(t));
    }
    if (local.steps + local.rejected > tol.max_steps) {
      throw Error(ErrorCode::kStepUnderflow, "step budget exhausted at t = " + std::to_string(t));
    }
  }
  if (stats) *stats += local;
  return x;
}

}  // namespace nilcycle
