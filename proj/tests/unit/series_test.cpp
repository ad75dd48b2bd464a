#include <cmath>

#include "doctest.h"
#include "nilcycle/error.hpp"
#include "nilcycle/series/bivariate.hpp"
#include "nilcycle/series/truncated_series.hpp"

using namespace nilcycle;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

TruncatedSeries poly(std::vector<Rational> c, int order) { return TruncatedSeries(std::move(c), order); }

// Catalan numbers, the closed form for the inverse of x + x^2.
Rational catalan(int k) {
  Rational c = 1;
  for (int i = 0; i < k; ++i) c = c * q(2 * (2 * i + 1), i + 2);
  return c;
}

// Generalized binomial coefficient C(p, k) for rational p.
Rational binom(const Rational& p, int k) {
  Rational c = 1;
  for (int i = 0; i < k; ++i) c = c * (p - i) / Rational(i + 1);
  return c;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("-6/4") == q(-3, 2));
  CHECK(parse_decimal("0.05") == q(1, 20));
  CHECK(parse_decimal("1e-3") == q(1, 1000));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("reversion of x + x^2 follows the Catalan numbers") {
  const auto f = poly({0, 1, 1}, 10);
  const auto g = reversion(f);
  CHECK(g.truncated(4) == poly({0, 1, -1, 2, -5}, 4));
  for (int k = 1; k <= g.order(); ++k) {
    const Rational expected = (k % 2 == 1 ? 1 : -1) * catalan(k - 1);
    CHECK(g[k] == expected);
  }
  CHECK(compose(f, g).agrees_with(TruncatedSeries::identity(10)));
}

TEST_CASE("reversion of a linear map") {
  const auto g = reversion(poly({0, 2}, 6));
  CHECK(g[1] == q(1, 2));
  for (int k = 2; k <= 6; ++k) CHECK(g[k] == 0);
}

TEST_CASE("reversion rejects a vanishing linear term") {
  CHECK_THROWS_AS(reversion(poly({0, 0, 1}, 6)), Error);
}

TEST_CASE("reciprocal and division") {
  const auto one_minus_x = poly({1, -1}, 8);
  const auto geom = reciprocal(one_minus_x);
  for (int k = 0; k <= 8; ++k) CHECK(geom[k] == 1);
  CHECK_THROWS_AS(poly({1}, 4) / poly({0, 1}, 4), Error);
}

TEST_CASE("fourth root with a perfect-power leading coefficient") {
  // x^4 (1 + 4x/5)
  const auto f = poly({0, 0, 0, 0, 1, q(4, 5)}, 12);
  const ScaledSeries r = root_k(f, 4);
  CHECK(r.exact());
  CHECK(r.series[1] == 1);
  CHECK(r.series[2] == q(1, 5));
  CHECK(r.series[3] == q(-3, 50));
  // Independent oracle: binomial series of (1 + 4x/5)^{1/4}.
  for (int k = 0; k + 1 <= r.series.order(); ++k) {
    CHECK(r.series[k + 1] == binom(q(1, 4), k) * pow(q(4, 5), static_cast<unsigned>(k)));
  }
  const auto fourth = r.series * r.series * r.series * r.series;
  CHECK(fourth.agrees_with(f));
}

TEST_CASE("root of a non-perfect leading coefficient keeps a radicand") {
  const auto f = poly({0, 0, 0, 0, 2}, 8);
  const ScaledSeries r = root_k(f, 4);
  CHECK_FALSE(r.exact());
  CHECK(r.eval(0.3) == doctest::Approx(std::pow(2.0 * std::pow(0.3, 4), 0.25)).epsilon(1e-14));
}

TEST_CASE("root errors") {
  CHECK_THROWS_AS(root_k(poly({0, 0, 0, 0, -1}, 8), 4), Error);
  CHECK_THROWS_AS(root_k(poly({0, 0, 0, 1}, 8), 4), Error);
}

TEST_CASE("integrate and differentiate") {
  const auto f = poly({1, 2, 3}, 2);
  const auto F = integrate(f);
  CHECK(F == poly({0, 1, 1, 1}, 3));
  CHECK(differentiate(F) == f);
}

TEST_CASE("float evaluation") {
  const auto f = poly({0, 1, -1, 2, -5}, 4);
  const SeriesValue v = eval_float(f, 0.1);
  CHECK(v.value == doctest::Approx(0.0915).epsilon(1e-15));
  CHECK(v.tail == doctest::Approx(5e-4));
  CHECK(horner(to_doubles(f), 0.1) == doctest::Approx(0.0915).epsilon(1e-15));
}

TEST_CASE("composition requires a zero constant") {
  CHECK_THROWS_AS(compose(poly({0, 1}, 4), poly({1, 1}, 4)), Error);
}

TEST_CASE("composition order rule") {
  const auto outer = poly({0, 1, 1}, 6);
  const auto inner = poly({0, 0, 1}, 10);
  const auto c = compose(outer, inner);
  CHECK(c.order() == 10);
  CHECK(c[2] == 1);
  CHECK(c[4] == 1);
}

TEST_CASE("bivariate substitution and partials") {
  BivariateTruncated p(6);
  p.accumulate(2, 0, 1);
  p.accumulate(1, 1, 1);
  p.accumulate(1, 1, 2);
  CHECK(p.coeff(1, 1) == 3);
  const auto y = poly({0, 1}, 6);
  const auto s = p.substitute(y);
  CHECK(s[2] == 4);
  CHECK(p.partial_y().coeff(1, 0) == 3);
  CHECK(p.partial_x().coeff(1, 0) == 2);
  CHECK(p.reflected_y().coeff(1, 1) == -3);
}
