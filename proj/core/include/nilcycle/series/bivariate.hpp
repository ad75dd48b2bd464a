#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nilcycle/series/rational.hpp"
#include "nilcycle/series/truncated_series.hpp"

namespace nilcycle {

/// Exponent pair (i, j) of the monomial x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;
  int degree() const { return i + j; }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Truncated bivariate polynomial sum c_ij x^i y^j over i + j <= order.
/// Only nonzero coefficients are stored. Stored terms are exact polynomial
/// data, so derivatives keep the order and `with_order` may raise it.
class BivariateTruncated {
 public:
  BivariateTruncated() = default;
  explicit BivariateTruncated(int order) : order_(order) {}

  int order() const noexcept { return order_; }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coeff(int i, int j) const;

  /// Adds c to the coefficient of x^i y^j. Terms above the order are dropped.
  void accumulate(int i, int j, const Rational& c);

  /// Highest total degree present, -1 when zero.
  int max_degree() const;
  int min_degree() const;

  BivariateTruncated with_order(int order) const;

  /// Partials lose one order of accuracy.
  BivariateTruncated partial_x() const;
  BivariateTruncated partial_y() const;

  /// P(x, -y).
  BivariateTruncated reflected_y() const;

  /// Drops every monomial of total degree above m.
  BivariateTruncated truncated_degree(int m) const;

  /// P(x, y(x)) as a univariate series; y(0) must vanish.
  TruncatedSeries substitute(const TruncatedSeries& y) const;

  BivariateTruncated operator-() const;
  BivariateTruncated& operator+=(const BivariateTruncated& rhs);
  friend bool operator==(const BivariateTruncated&, const BivariateTruncated&) = default;

  std::string to_string() const;

 private:
  int order_ = kDefaultOrderCap;
  std::map<Monomial, Rational> terms_;
};

/// Bivariate polynomial with double coefficients for the integrator.
class NumericPolynomial {
 public:
  NumericPolynomial() = default;
  explicit NumericPolynomial(const BivariateTruncated& p);

  double operator()(double x, double y) const;
  bool empty() const noexcept { return terms_.empty(); }

 private:
  struct Term {
    int i;
    int j;
    double c;
  };
  std::vector<Term> terms_;
  int max_i_ = 0;
  int max_j_ = 0;
};

}  // namespace nilcycle
