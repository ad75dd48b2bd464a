#include "nilcycle/poincare/simulate.hpp"

#include <cmath>
#include <numbers>

namespace nilcycle {

std::vector<double> forward_crossings(const PolarField& field, double x0, int crossings,
                                      const Tolerances& tol) {
  using State = std::array<double, 2>;
  auto rhs = [&field](double, const State& s) {
    const auto v = field.cartesian(s[0], s[1]);
    return State{v.xdot, v.ydot};
  };
  auto gap = [&field](const State& s) { return s[1] - field.section_value(s[0]); };

  // The linearized rotation near the origin takes time ~ x0^{1-n} per turn.
  const double turn = 2.0 * std::numbers::pi * std::pow(std::abs(x0), 1 - field.n());
  const double chunk = turn / 64.0;

  std::vector<double> out;
  State s{x0, field.section_value(x0)};
  double t = 0.0;
  // Leave the section first.
  s = integrate_adaptive<2>(rhs, s, t, t + chunk, tol);
  t += chunk;
  const long max_chunks = 64L * 50L * crossings;
  for (long k = 0; k < max_chunks && static_cast<int>(out.size()) < crossings; ++k) {
    const State next = integrate_adaptive<2>(rhs, s, t, t + chunk, tol);
    if (gap(s) > 0 && gap(next) <= 0 && next[0] > 0) {
      double lo = 0.0;
      double hi = chunk;
      State at_hi = next;
      for (int it = 0; it < 80 && hi - lo > 1e-14 * (1.0 + t); ++it) {
        const double mid = 0.5 * (lo + hi);
        const State m = integrate_adaptive<2>(rhs, s, t, t + mid, tol);
        if (gap(m) > 0) {
          lo = mid;
        } else {
          hi = mid;
          at_hi = m;
        }
      }
      out.push_back(at_hi[0]);
    }
    s = next;
    t += chunk;
  }
  return out;
}

FlowTrend forward_trend(const PolarField& field, double x0, int crossings, double neutral_tol) {
  const auto xs = forward_crossings(field, x0, crossings);
  if (xs.empty()) return FlowTrend::kNeutral;
  const double change = xs.back() - x0;
  if (std::abs(change) <= neutral_tol * std::abs(x0)) return FlowTrend::kNeutral;
  return change < 0 ? FlowTrend::kContracting : FlowTrend::kExpanding;
}

}  // namespace nilcycle
