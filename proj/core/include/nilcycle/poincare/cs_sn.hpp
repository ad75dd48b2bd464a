#pragma once

#include "nilcycle/poincare/integrator.hpp"

namespace nilcycle {

struct CsSn {
  double cs = 1.0;
  double sn = 0.0;
};

/// Generalized trigonometric pair: solution of x' = y, y' = -x^{2n-1}
/// through (1, 0), so that Cs^{2n} + n Sn^2 = 1.
CsSn cs_sn(int n, double t);
CsSn cs_sn(int n, double t, const Tolerances& tol);

/// Closed-form period 2 sqrt(pi/n) Gamma(1/2n) / Gamma((n+1)/2n).
double period_T(int n);

/// First return time of (Cs, Sn) to (1, 0), found by integrating the
/// defining system and refining the downward zero crossing of Sn.
double measured_period(int n);

/// max |Cs^{2n} + n Sn^2 - 1| over `samples` equally spaced t in [0, t_max].
double energy_drift(int n, double t_max, int samples);

}  // namespace nilcycle
