#include "nilcycle/series/truncated_series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nilcycle/error.hpp"

namespace nilcycle {

namespace {

const Rational& zero_rational() {
  static const Rational kZero(0);
  return kZero;
}

}  // namespace

TruncatedSeries::TruncatedSeries() : coeffs_(1) {}

TruncatedSeries::TruncatedSeries(int order) : coeffs_(static_cast<std::size_t>(std::max(order, 0)) + 1) {}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs, int order)
    : coeffs_(std::move(coeffs)) {
  coeffs_.resize(static_cast<std::size_t>(std::max(order, 0)) + 1);
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, int order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, int degree, int order) {
  TruncatedSeries s(order);
  if (degree >= 0 && degree <= order) s.coeffs_[static_cast<std::size_t>(degree)] = c;
  return s;
}

TruncatedSeries TruncatedSeries::identity(int order) { return monomial(Rational(1), 1, order); }

const Rational& TruncatedSeries::operator[](int k) const {
  if (k < 0 || k > order()) return zero_rational();
  return coeffs_[static_cast<std::size_t>(k)];
}

void TruncatedSeries::set(int k, const Rational& value) {
  if (k < 0 || k > order()) return;
  coeffs_[static_cast<std::size_t>(k)] = value;
}

std::optional<int> TruncatedSeries::valuation() const {
  for (int k = 0; k <= order(); ++k) {
    if (sgn(coeffs_[static_cast<std::size_t>(k)]) != 0) return k;
  }
  return std::nullopt;
}

int TruncatedSeries::degree() const {
  for (int k = order(); k >= 0; --k) {
    if (sgn(coeffs_[static_cast<std::size_t>(k)]) != 0) return k;
  }
  return -1;
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
  return TruncatedSeries(std::vector<Rational>(coeffs_.begin(),
                                               coeffs_.begin() + std::min(new_order, order()) + 1),
                         new_order);
}

TruncatedSeries TruncatedSeries::shifted(int shift) const {
  if (shift == 0) return *this;
  if (shift > 0) {
    std::vector<Rational> c(static_cast<std::size_t>(shift));
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return TruncatedSeries(std::move(c), order() + shift);
  }
  const int down = -shift;
  for (int k = 0; k < std::min(down, order() + 1); ++k) {
    if (sgn(coeffs_[static_cast<std::size_t>(k)]) != 0) {
      throw Error(ErrorCode::kDivisionBySingularSeries,
                  "cannot divide by x^" + std::to_string(down) + ": nonzero x^" +
                      std::to_string(k) + " term");
    }
  }
  if (down > order()) return TruncatedSeries(0);
  return TruncatedSeries(std::vector<Rational>(coeffs_.begin() + down, coeffs_.end()), order() - down);
}

TruncatedSeries TruncatedSeries::reflected() const {
  TruncatedSeries r = *this;
  for (int k = 1; k <= order(); k += 2) r.coeffs_[static_cast<std::size_t>(k)] *= -1;
  return r;
}

bool TruncatedSeries::is_odd() const {
  for (int k = 0; k <= order(); k += 2) {
    if (sgn(coeffs_[static_cast<std::size_t>(k)]) != 0) return false;
  }
  return true;
}

bool TruncatedSeries::is_even() const {
  for (int k = 1; k <= order(); k += 2) {
    if (sgn(coeffs_[static_cast<std::size_t>(k)]) != 0) return false;
  }
  return true;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) {
  coeffs_.resize(static_cast<std::size_t>(std::min(order(), rhs.order())) + 1);
  for (int k = 0; k <= order(); ++k) coeffs_[static_cast<std::size_t>(k)] += rhs[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) {
  coeffs_.resize(static_cast<std::size_t>(std::min(order(), rhs.order())) + 1);
  for (int k = 0; k <= order(); ++k) coeffs_[static_cast<std::size_t>(k)] -= rhs[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& rhs) {
  const int n = std::min(order(), rhs.order());
  const int lo_a = valuation().value_or(n + 1);
  const int lo_b = rhs.valuation().value_or(n + 1);
  std::vector<Rational> out(static_cast<std::size_t>(n) + 1);
  Rational term;
  for (int i = lo_a; i <= n; ++i) {
    const Rational& ai = coeffs_[static_cast<std::size_t>(i)];
    if (sgn(ai) == 0) continue;
    for (int j = lo_b; i + j <= n; ++j) {
      const Rational& bj = rhs.coeffs_[static_cast<std::size_t>(j)];
      if (sgn(bj) == 0) continue;
      term = ai * bj;
      out[static_cast<std::size_t>(i + j)] += term;
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

TruncatedSeries reciprocal(const TruncatedSeries& b) {
  if (sgn(b[0]) == 0) {
    throw Error(ErrorCode::kDivisionBySingularSeries, "divisor has zero constant term");
  }
  const int n = b.order();
  TruncatedSeries r(n);
  const Rational inv0 = 1 / b[0];
  r.set(0, inv0);
  for (int k = 1; k <= n; ++k) {
    Rational acc(0);
    for (int j = 1; j <= k; ++j) {
      if (sgn(b[j]) == 0) continue;
      acc += b[j] * r[k - j];
    }
    r.set(k, -acc * inv0);
  }
  return r;
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
  return a * reciprocal(b);
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& other) const {
  return agrees_with(other, std::min(order(), other.order()));
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& other, int through_order) const {
  for (int k = 0; k <= through_order; ++k) {
    if ((*this)[k] != other[k]) return false;
  }
  return true;
}

std::string TruncatedSeries::to_string(char var) const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= order(); ++k) {
    const Rational& c = coeffs_[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << '-';
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  if (first) os << '0';
  os << " + O(" << var << '^' << order() + 1 << ')';
  return os.str();
}

TruncatedSeries ring_op(const TruncatedSeries& a, const TruncatedSeries& b, RingOp op) {
  switch (op) {
    case RingOp::kAdd: return a + b;
    case RingOp::kSub: return a - b;
    case RingOp::kMul: return a * b;
    case RingOp::kDiv: return a / b;
  }
  return a;
}

TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner, int cap) {
  if (sgn(inner[0]) != 0) {
    throw Error(ErrorCode::kCompositionRequiresZeroConstant,
                "inner series has constant term " + inner[0].get_str());
  }
  const auto m = inner.valuation();
  if (!m) {
    return TruncatedSeries::constant(outer[0], std::min(inner.order(), cap));
  }
  const int result_order = std::min({outer.order() * *m, inner.order(), cap});
  const TruncatedSeries w = inner.truncated(result_order);
  const int top = std::min(outer.order(), result_order / *m);
  TruncatedSeries acc = TruncatedSeries::constant(outer[top], result_order);
  for (int k = top - 1; k >= 0; --k) {
    acc *= w;
    acc.set(0, acc[0] + outer[k]);
  }
  return acc;
}

TruncatedSeries reversion(const TruncatedSeries& f) {
  if (sgn(f[0]) != 0) {
    throw Error(ErrorCode::kCompositionRequiresZeroConstant, "reversion needs f(0) = 0");
  }
  if (sgn(f[1]) == 0) {
    throw Error(ErrorCode::kNotInvertibleAtOrigin, "f'(0) = 0");
  }
  const int n = f.order();
  const TruncatedSeries id = TruncatedSeries::identity(n);
  // f' padded back to order n; the padding only meets terms of the Newton
  // residual that are already beyond x^n.
  const TruncatedSeries df = differentiate(f);
  const TruncatedSeries fp(std::vector<Rational>(df.coeffs().begin(), df.coeffs().end()), n);
  TruncatedSeries g = TruncatedSeries::monomial(1 / f[1], 1, n);
  // Newton on f(g) = x doubles the number of correct terms per pass.
  for (int correct = 1; correct < n;) {
    const TruncatedSeries residual = compose(f, g, n) - id;
    if (residual.is_zero()) break;
    g -= residual / compose(fp, g, n);
    correct = 2 * correct + 1;
  }
  while (!(compose(f, g, n) - id).is_zero()) {
    g -= (compose(f, g, n) - id) / compose(fp, g, n);
  }
  return g.truncated(n);
}

TruncatedSeries unit_power(const TruncatedSeries& f, const Rational& exponent) {
  if (f[0] != 1) {
    throw Error(ErrorCode::kRootOfNonpositiveLeading, "unit_power expects f(0) = 1");
  }
  const int n = f.order();
  TruncatedSeries s(n);
  s.set(0, Rational(1));
  const Rational a1 = exponent + 1;
  for (int k = 1; k <= n; ++k) {
    Rational acc(0);
    for (int j = 1; j <= k; ++j) {
      if (sgn(f[j]) == 0) continue;
      acc += (a1 * j - k) * f[j] * s[k - j];
    }
    s.set(k, acc / k);
  }
  return s;
}

double ScaledSeries::scale() const {
  return std::pow(to_double(radicand), 1.0 / static_cast<double>(index));
}

double ScaledSeries::eval(double x) const { return scale() * eval_float(series, x).value; }

ScaledSeries root_k(const TruncatedSeries& f, int k) {
  if (k <= 0) throw Error(ErrorCode::kRootBranchUndefined, "root index must be positive");
  const auto m = f.valuation();
  if (!m) return ScaledSeries{Rational(1), k, TruncatedSeries(f.order())};
  if (*m % k != 0) {
    throw Error(ErrorCode::kRootBranchUndefined,
                "leading power " + std::to_string(*m) + " not divisible by " + std::to_string(k));
  }
  const Rational c = f[*m];
  if (sgn(c) <= 0) {
    throw Error(ErrorCode::kRootOfNonpositiveLeading, "leading coefficient " + c.get_str());
  }
  TruncatedSeries unit = f.shifted(-*m);
  unit *= Rational(1) / c;
  TruncatedSeries s = unit_power(unit, Rational(1, k));
  ScaledSeries out;
  out.index = k;
  Rational exact;
  if (exact_root(c, static_cast<unsigned>(k), exact)) {
    s *= exact;
  } else {
    out.radicand = c;
  }
  out.series = s.shifted(*m / k);
  return out;
}

TruncatedSeries integrate(const TruncatedSeries& f, int cap) {
  const int n = std::min(f.order() + 1, std::max(cap, 1));
  TruncatedSeries r(n);
  for (int k = 1; k <= n; ++k) r.set(k, f[k - 1] / k);
  return r;
}

TruncatedSeries differentiate(const TruncatedSeries& f) {
  const int n = std::max(f.order() - 1, 0);
  TruncatedSeries r(n);
  for (int k = 0; k <= n; ++k) r.set(k, f[k + 1] * (k + 1));
  return r;
}

SeriesValue eval_float(const TruncatedSeries& f, double x) {
  const auto c = to_doubles(f);
  return {horner(c, x), std::abs(c.back() * std::pow(x, f.order()))};
}

std::vector<double> to_doubles(const TruncatedSeries& f) {
  std::vector<double> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) out.push_back(to_double(c));
  return out;
}

double horner(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace nilcycle
