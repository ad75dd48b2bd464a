#include <random>

#include "doctest.h"
#include "nilcycle/focal/lienard.hpp"
#include "nilcycle/system/planar_system.hpp"

using namespace nilcycle;

namespace {

struct Gen {
  std::mt19937_64 rng{20240611};

  Rational rational() {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
  }

  TruncatedSeries series(int order, int from = 0) {
    TruncatedSeries s(order);
    for (int k = from; k <= order; ++k) s.set(k, rational());
    return s;
  }

  // g = a x^{2n-1} + ..., a > 0.
  TruncatedSeries g(int n, int order) {
    TruncatedSeries s = series(order, 2 * n);
    Rational a = rational();
    if (a <= 0) a = 1 - a;
    s.set(2 * n - 1, a);
    return s;
  }
};

constexpr int kTrials = 25;

}  // namespace

TEST_CASE("ring axioms") {
  Gen gen;
  for (int t = 0; t < kTrials; ++t) {
    const auto a = gen.series(8), b = gen.series(8), c = gen.series(8);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == TruncatedSeries(8));
    if (b[0] != 0) CHECK((a / b) * b == a);
  }
}

TEST_CASE("reversion is a two-sided inverse") {
  Gen gen;
  for (int t = 0; t < kTrials; ++t) {
    auto f = gen.series(10, 2);
    f.set(1, gen.rational() + 10);
    const auto g = reversion(f);
    CHECK(compose(f, g).agrees_with(TruncatedSeries::identity(10)));
    CHECK(compose(g, f).agrees_with(TruncatedSeries::identity(10)));
  }
}

TEST_CASE("alpha is an involution preserving G") {
  Gen gen;
  for (int t = 0; t < kTrials; ++t) {
    const int n = 2 + t % 3;
    const auto d = build_lienard(gen.g(n, 4 * n + 6), gen.series(4 * n + 6));
    const int through = d.alpha.order();
    CHECK(compose(d.alpha, d.alpha).agrees_with(TruncatedSeries::identity(through)));
    CHECK(compose(d.G, d.alpha).agrees_with(d.G));
  }
}

TEST_CASE("focal coefficients are linear in f") {
  Gen gen;
  for (int t = 0; t < kTrials; ++t) {
    const auto g = gen.g(2, 14);
    const auto f1 = gen.series(14), f2 = gen.series(14);
    const Rational s = gen.rational();
    const auto B1 = focal_coefficients(g, f1);
    const auto B2 = focal_coefficients(g, f2);
    const auto B = focal_coefficients(g, f1 + f2 * s);
    REQUIRE(B.size() == B1.size());
    for (std::size_t j = 0; j < B.size(); ++j) CHECK(B[j] == B1[j] + s * B2[j]);
  }
}

TEST_CASE("classification ignores degrees above 2n - 1") {
  Gen gen;
  for (int t = 0; t < kTrials; ++t) {
    const int n = 2 + t % 2;
    const auto sys = make_lienard(gen.g(n, 12), gen.series(12, n - 1), 12);
    const auto full = classify(sys);
    for (int m = 2 * n - 1; m <= 12; ++m) {
      const auto cut = classify(truncate_degree(sys, m));
      CHECK(cut.n == full.n);
      CHECK(cut.a == full.a);
      CHECK(cut.b == full.b);
      CHECK(cut.monodromic == full.monodromic);
    }
  }
}

TEST_CASE("extraction is the identity on Lienard systems") {
  Gen gen;
  for (int t = 0; t < kTrials; ++t) {
    const auto g = gen.g(2, 10), f = gen.series(10);
    const auto parts = extract_fg(parse_system(format_system(make_lienard(g, f, 10))));
    CHECK(parts.g.agrees_with(g));
    CHECK(parts.f.agrees_with(f));
  }
}
