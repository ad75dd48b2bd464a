#include "nilcycle/focal/lienard.hpp"

#include <cmath>

#include "nilcycle/error.hpp"

namespace nilcycle {

double FbarSeries::sigma() const {
  return std::pow(to_double(scale_radicand), 1.0 / static_cast<double>(scale_index));
}

double FbarSeries::coefficient(int j) const {
  return std::pow(sigma(), 2 * n - 1 - j) * to_double(rescaled[j]);
}

Rational FbarSeries::leading_square() const {
  const Rational& c = rescaled[n - 1];
  // sigma^{2n} = radicand^{2n / index}; the index is always 2n here.
  const unsigned power = static_cast<unsigned>((2 * n) / scale_index);
  return c * c * pow(scale_radicand, power);
}

LienardData build_lienard(const TruncatedSeries& g, const TruncatedSeries& f) {
  const auto v = g.valuation();
  if (!v || *v % 2 == 0 || *v < 3 || sgn(g[*v]) <= 0) {
    throw Error(ErrorCode::kHypothesisViolation,
                "g must start with a x^{2n-1}, n >= 2, a > 0; got " + g.to_string());
  }
  LienardData d;
  d.g = g;
  d.f = f;
  d.n = (*v + 1) / 2;
  d.a_lead = g[*v];

  const int order = g.order();
  d.F = integrate(f, order);
  d.G = integrate(g, order + 1);
  d.u = root_k(d.G * Rational(2 * d.n), 2 * d.n);

  // u(alpha) = -u(x); the positive prefactor cancels, so the rational
  // series part of u is enough.
  const TruncatedSeries& unit_u = d.u.series;
  const TruncatedSeries w = reversion(unit_u);
  d.alpha = compose(w, -unit_u, unit_u.order());

  // fbar(x) = x^{2n-1} f(w(x/sigma)) / g(w(x/sigma)) = sigma^{2n-1} phi(x/sigma).
  const int cap = w.order();
  const TruncatedSeries g_of_w = compose(g, w, cap).shifted(-(2 * d.n - 1));
  const TruncatedSeries f_of_w = compose(f, w, cap);
  d.fbar.rescaled = f_of_w / g_of_w;
  d.fbar.scale_radicand = d.u.radicand;
  d.fbar.scale_index = d.u.index;
  d.fbar.n = d.n;
  return d;
}

std::string_view to_string(Stability s) {
  switch (s) {
    case Stability::kStable: return "stable";
    case Stability::kUnstable: return "unstable";
    case Stability::kUndetermined: return "undetermined";
    case Stability::kCenterCandidate: return "center-candidate";
  }
  return "undetermined";
}

std::string_view to_string(HypothesisCase c) {
  switch (c) {
    case HypothesisCase::kNone: return "none";
    case HypothesisCase::kN2Focus: return "n2-focus";
    case HypothesisCase::kSymmetric: return "symmetric";
  }
  return "none";
}

const Rational& FocalReport::coefficient(int j) const {
  static const Rational kZero(0);
  if (j < 1 || j > static_cast<int>(B.size())) return kZero;
  return B[static_cast<std::size_t>(j - 1)];
}

int first_focus_index(int n) { return 2 * (n / 2) + 1; }

namespace {

bool lienard_monodromic(const LienardData& d) {
  for (int j = 0; j < d.n - 1; ++j) {
    if (sgn(d.f[j]) != 0) return false;
  }
  const Rational& b = d.f[d.n - 1];
  return sgn(b * b - 4 * d.n * d.a_lead) < 0;
}

HypothesisCase hypothesis_case_of(const LienardData& d) {
  const Rational& b_lead = d.f[d.n - 1];
  const bool bound = sgn(b_lead * b_lead - 4 * d.n * d.a_lead) < 0;
  if (d.n == 2) {
    return sgn(d.f[0]) == 0 && bound ? HypothesisCase::kN2Focus : HypothesisCase::kNone;
  }
  if (!d.g.is_odd() || !d.f.is_even()) return HypothesisCase::kNone;
  for (int j = 0; j <= d.n - 2; ++j) {
    if (sgn(d.f[j]) != 0) return HypothesisCase::kNone;
  }
  return bound ? HypothesisCase::kSymmetric : HypothesisCase::kNone;
}

}  // namespace

FocalReport focal_B(const LienardData& data) {
  FocalReport rep;
  rep.n = data.n;
  rep.p_n = data.n % 2 == 0 ? 1 : 0;
  const TruncatedSeries diff = compose(data.F, data.alpha, data.alpha.order()) - data.F;
  for (int j = 1; j <= diff.order(); ++j) rep.B.push_back(diff[j]);

  rep.monodromic = lienard_monodromic(data);
  rep.symmetric_center = data.g.is_odd() && data.f.is_odd();
  rep.hypothesis_case = hypothesis_case_of(data);

  for (int j = 1; j <= diff.order(); j += 2) {
    if (sgn(diff[j]) != 0) {
      rep.first_odd_nonzero = j;
      break;
    }
  }
  const int focus_start = first_focus_index(data.n);
  if (rep.first_odd_nonzero) {
    const int j = *rep.first_odd_nonzero;
    const auto by_sign = sgn(diff[j]) < 0 ? Stability::kStable : Stability::kUnstable;
    if (j < focus_start) {
      rep.node_range = true;
      rep.stability = by_sign;
    } else if (rep.monodromic) {
      rep.focus_order = (j - focus_start) / 2;
      rep.stability = by_sign;
    }
  } else if (rep.monodromic) {
    rep.stability = Stability::kCenterCandidate;
  }
  return rep;
}

Stability filippov_check(const LienardData& data) {
  const FbarSeries& fb = data.fbar;
  for (int j = 0; j < data.n - 1; ++j) {
    if (fb.coefficient_sign(j) != 0) return Stability::kUndetermined;
  }
  if (sgn(fb.leading_square() - 4 * data.n) >= 0) return Stability::kUndetermined;
  const int first_even = (data.n - 1) % 2 == 0 ? data.n - 1 : data.n;
  for (int j = first_even; j <= fb.rescaled.order(); j += 2) {
    const int s = fb.coefficient_sign(j);
    if (s != 0) return s > 0 ? Stability::kStable : Stability::kUnstable;
  }
  return Stability::kCenterCandidate;
}

std::vector<Rational> focal_coefficients(const TruncatedSeries& g, const TruncatedSeries& f) {
  return focal_B(build_lienard(g, f)).B;
}

}  // namespace nilcycle
