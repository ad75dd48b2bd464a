#include "doctest.h"
#include "nilcycle/error.hpp"
#include "nilcycle/focal/lienard.hpp"

using namespace nilcycle;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

TruncatedSeries poly(std::vector<Rational> c, int order = 20) { return TruncatedSeries(std::move(c), order); }

TruncatedSeries odd_g() { return poly({0, 0, 0, 1, 0, 1}); }

}  // namespace

TEST_CASE("alpha for g = x^3 + x^4") {
  const auto d = build_lienard(poly({0, 0, 0, 1, 1}), poly({0}));
  CHECK(d.alpha[0] == 0);
  CHECK(d.alpha[1] == -1);
  CHECK(d.alpha[2] == q(-2, 5));
  // Oracle: G(alpha(x)) = G(x) through the series order.
  CHECK(compose(d.G, d.alpha).agrees_with(d.G));
  CHECK(compose(d.alpha, d.alpha).agrees_with(TruncatedSeries::identity(d.alpha.order())));
}

TEST_CASE("odd g gives alpha = -x") {
  const auto d = build_lienard(odd_g(), poly({0}));
  CHECK(d.alpha[1] == -1);
  for (int k = 2; k <= d.alpha.order(); ++k) CHECK(d.alpha[k] == 0);
}

TEST_CASE("canonical reduction of g = x^3, f = x") {
  const auto d = build_lienard(poly({0, 0, 0, 1}), poly({0, 1}));
  CHECK(d.n == 2);
  CHECK(d.u.exact());
  CHECK(d.u.series[1] == 1);
  for (int k = 2; k <= d.u.series.order(); ++k) CHECK(d.u.series[k] == 0);
  CHECK(d.fbar.rescaled[1] == 1);
  for (int k = 2; k <= d.fbar.rescaled.order(); ++k) CHECK(d.fbar.rescaled[k] == 0);
}

TEST_CASE("reduction rejects a negative leading coefficient and n = 1") {
  CHECK_THROWS_AS(build_lienard(poly({0, 0, 0, -1}), poly({0})), Error);
  CHECK_THROWS_AS(build_lienard(poly({0, 1}), poly({0})), Error);
}

TEST_CASE("Filippov stability from fbar") {
  const auto g = poly({0, 0, 0, 1});
  CHECK(filippov_check(build_lienard(g, poly({0, 0, 1}))) == Stability::kStable);
  CHECK(filippov_check(build_lienard(g, poly({0, 0, -1}))) == Stability::kUnstable);
  CHECK(filippov_check(build_lienard(g, poly({0, 1}))) == Stability::kCenterCandidate);
}

TEST_CASE("odd g and odd f give a symmetric center candidate") {
  const auto report = focal_B(build_lienard(odd_g(), poly({0, 1, 0, -3})));
  CHECK(report.stability == Stability::kCenterCandidate);
  CHECK(report.symmetric_center);
  for (const auto& b : report.B) CHECK(b == 0);
}

TEST_CASE("odd g: B_{2j+1} = -2 b_2j / (2j + 1) and even B vanish") {
  const auto f = poly({q(1, 3), q(-2, 7), q(5, 2), 1, q(-4, 9), q(1, 11), q(3, 5)});
  const auto B = focal_coefficients(odd_g(), f);
  REQUIRE(B.size() >= 8);
  for (int j = 0; j <= 3; ++j) {
    CHECK(B[static_cast<std::size_t>(2 * j)] == Rational(-2) * f[2 * j] / Rational(2 * j + 1));
    CHECK(B[static_cast<std::size_t>(2 * j + 1)] == 0);
  }
}

TEST_CASE("B_n for n = 3 with b2 = 1") {
  const auto B = focal_coefficients(poly({0, 0, 0, 0, 0, 1}), poly({0, 0, 1}));
  CHECK(B[2] == q(-2, 3));
}

TEST_CASE("general g: B is F(alpha) - F computed independently") {
  const auto g = poly({0, 0, 0, 2, 1, q(-1, 3)});
  const auto f = poly({0, q(1, 2), 3, q(-1, 4), 1});
  const auto d = build_lienard(g, f);
  const auto diff = compose(d.F, d.alpha) - d.F;
  const auto B = focal_B(d).B;
  for (std::size_t j = 0; j < B.size() && static_cast<int>(j) + 1 <= diff.order(); ++j) {
    CHECK(B[j] == diff[static_cast<int>(j) + 1]);
  }
}

TEST_CASE("focal report for the quadratic damping focus") {
  const auto r = focal_B(build_lienard(poly({0, 0, 0, 1}), poly({0, 0, 1})));
  CHECK(r.n == 2);
  CHECK(r.p_n == 1);
  REQUIRE(r.first_odd_nonzero.has_value());
  CHECK(*r.first_odd_nonzero == 3);
  CHECK(r.coefficient(3) == q(-2, 3));
  CHECK(r.stability == Stability::kStable);
  CHECK(r.monodromic);
  CHECK_FALSE(r.node_range);
}

TEST_CASE("nonzero b0 puts the point in the node range") {
  const auto r = focal_B(build_lienard(poly({0, 0, 0, 1}), poly({q(1, 10)})));
  CHECK(r.node_range);
  CHECK(r.coefficient(1) == q(-1, 5));
  CHECK(r.stability == Stability::kStable);
}

TEST_CASE("first focus index") {
  CHECK(first_focus_index(2) == 3);
  CHECK(first_focus_index(3) == 3);
  CHECK(first_focus_index(4) == 5);
}
