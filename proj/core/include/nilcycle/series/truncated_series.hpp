#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nilcycle/series/rational.hpp"

namespace nilcycle {

/// Global cap on truncation orders produced by composition and
/// integration. Callers pass their own cap when they need more terms.
inline constexpr int kDefaultOrderCap = 40;

/// Univariate power series c_0 + c_1 x + ... + c_N x^N + O(x^{N+1}) with
/// exact rational coefficients.
///
/// Binary arithmetic truncates to the smaller of the two orders; every
/// coefficient of the result is exact through that order.
class TruncatedSeries {
 public:
  /// Zero series of order 0.
  TruncatedSeries();

  /// Zero series of the given order.
  explicit TruncatedSeries(int order);

  /// `coeffs` shorter than order+1 is zero-padded; longer is truncated.
  TruncatedSeries(std::vector<Rational> coeffs, int order);

  static TruncatedSeries constant(const Rational& c, int order);
  static TruncatedSeries monomial(const Rational& c, int degree, int order);
  static TruncatedSeries identity(int order);

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of x^k; zero for k beyond the stored order.
  const Rational& operator[](int k) const;
  void set(int k, const Rational& value);

  std::span<const Rational> coeffs() const noexcept { return coeffs_; }

  /// Lowest degree with a nonzero coefficient, or nullopt for the zero series.
  std::optional<int> valuation() const;
  bool is_zero() const { return !valuation().has_value(); }

  /// Highest degree with a nonzero coefficient, or -1 for zero.
  int degree() const;

  TruncatedSeries truncated(int order) const;

  /// Multiplies by x^shift (shift > 0) or divides by x^{-shift}. Dividing
  /// requires the low coefficients to vanish.
  TruncatedSeries shifted(int shift) const;

  /// f(-x).
  TruncatedSeries reflected() const;

  bool is_odd() const;
  bool is_even() const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& rhs);
  TruncatedSeries& operator-=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(const TruncatedSeries& rhs);
  TruncatedSeries& operator*=(const Rational& scale);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) { return a *= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend TruncatedSeries operator*(const Rational& s, TruncatedSeries a) { return a *= s; }

  /// a * (1/b). Throws kDivisionBySingularSeries when b(0) == 0.
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Coefficient-wise equality, including order.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

  /// Equal through the smaller of the two orders.
  bool agrees_with(const TruncatedSeries& other) const;
  bool agrees_with(const TruncatedSeries& other, int through_order) const;

  std::string to_string(char var = 'x') const;

 private:
  std::vector<Rational> coeffs_;
};

enum class RingOp { kAdd, kSub, kMul, kDiv };

TruncatedSeries ring_op(const TruncatedSeries& a, const TruncatedSeries& b, RingOp op);

/// Multiplicative inverse; requires a nonzero constant term.
TruncatedSeries reciprocal(const TruncatedSeries& b);

/// outer(inner(x)). Requires inner(0) == 0. The result order is
/// min(N_outer * m, N_inner, cap) where m is the valuation of inner.
TruncatedSeries compose(const TruncatedSeries& outer, const TruncatedSeries& inner,
                        int cap = kDefaultOrderCap);

/// Compositional inverse g with f(g(x)) = x. Requires f(0) = 0, f'(0) != 0.
TruncatedSeries reversion(const TruncatedSeries& f);

/// f^p for a rational exponent p, f(0) = 1.
TruncatedSeries unit_power(const TruncatedSeries& f, const Rational& exponent);

/// Series k-th root with a symbolic positive prefactor.
///
/// The represented value is radicand^{1/index} * series. When the
/// leading coefficient is a perfect k-th power the prefactor is folded
/// into `series` and radicand is 1.
struct ScaledSeries {
  Rational radicand{1};
  int index = 1;
  TruncatedSeries series;

  bool exact() const { return radicand == 1; }
  double scale() const;
  double eval(double x) const;
};

/// Principal k-th root of f = c x^m (1 + h(x)), c > 0, k | m.
ScaledSeries root_k(const TruncatedSeries& f, int k);

/// Term-wise antiderivative with zero constant; order N+1 capped at `cap`.
TruncatedSeries integrate(const TruncatedSeries& f, int cap = kDefaultOrderCap);
TruncatedSeries differentiate(const TruncatedSeries& f);

struct SeriesValue {
  double value = 0.0;
  /// |c_N x^N|, the size of the last retained term.
  double tail = 0.0;
};

/// Horner evaluation in double precision.
SeriesValue eval_float(const TruncatedSeries& f, double x);

/// Coefficients as doubles, for repeated numerical evaluation.
std::vector<double> to_doubles(const TruncatedSeries& f);

/// Horner on double coefficients.
double horner(std::span<const double> coeffs, double x);

}  // namespace nilcycle
