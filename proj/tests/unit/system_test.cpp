#include "doctest.h"
#include "nilcycle/error.hpp"
#include "nilcycle/system/planar_system.hpp"

using namespace nilcycle;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("section curve of X = x^2 + x y") {
  const auto sys = parse_system("kind general\norder 8\nX 2 0 1\nX 1 1 1\nY 3 0 -1\n");
  const auto F = section_curve(sys);
  CHECK(F[2] == -1);
  CHECK(F[3] == 1);
  CHECK(F[4] == -1);
  // Oracle: F = -x^2 / (1 + x).
  for (int k = 2; k <= F.order(); ++k) CHECK(F[k] == (k % 2 == 0 ? -1 : 1));
}

TEST_CASE("X = y^2 leaves the section at zero") {
  const auto sys = parse_system("kind general\nX 0 2 1\nY 3 0 -1\n");
  CHECK(section_curve(sys).is_zero());
}

TEST_CASE("reversed quadratic system normalizes and extracts f = -2A x") {
  const auto sys = parse_system(
      "kind general\norientation -1\nX 2 0 1/2\nX 1 1 1/3\nX 0 2 -1/4\nY 3 0 1\nY 1 2 1\nY 0 3 1\n");
  CHECK(sys.input_orientation == -1);
  const auto parts = extract_fg(sys);
  CHECK(parts.g[1] == 0);
  CHECK(parts.g[2] == 0);
  CHECK(parts.g[3] == 1);
  CHECK(parts.g[4] == 0);
  CHECK(parts.f[0] == 0);
  CHECK(parts.f[1] == -1);
}

TEST_CASE("lienard systems round-trip through parse and extraction") {
  const auto sys = parse_system("kind lienard\norder 12\ng 3 1\ng 5 2/3\nf 1 -1\nf 2 1/7\n");
  CHECK(sys.kind == SystemKind::kLienard);
  const auto parts = extract_fg(sys);
  CHECK(parts.g[3] == 1);
  CHECK(parts.g[5] == q(2, 3));
  CHECK(parts.f[1] == -1);
  CHECK(parts.f[2] == q(1, 7));
  const auto reparsed = parse_system(format_system(sys));
  CHECK(reparsed.X == sys.X);
  CHECK(reparsed.Y == sys.Y);
}

TEST_CASE("parse errors") {
  CHECK(code_of([] { parse_system("kind general\nX 1 1 1/0\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_system("kind general\nX 1 1 0.5\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_system("kind sideways\n"); }) == ErrorCode::kParseError);
  CHECK(code_of([] { parse_system("kind general\nY 1 0 1\n"); }) == ErrorCode::kInvalidLowOrderTerms);
  CHECK(code_of([] { load_system("/nonexistent/system.pvf"); }) == ErrorCode::kIoError);
}

TEST_CASE("repeated terms accumulate") {
  const auto sys = parse_system("kind general\nY 3 0 -1\nY 3 0 -1\n");
  CHECK(sys.Y.coeff(3, 0) == -2);
}

TEST_CASE("even leading power of g is rejected") {
  const TruncatedSeries g({0, 0, 1}, 8);
  CHECK(code_of([&] { classify_nilpotent(g, TruncatedSeries(8)); }) == ErrorCode::kNotOddLeadingPower);
  CHECK(code_of([] { classify_nilpotent(TruncatedSeries(8), TruncatedSeries(8)); }) == ErrorCode::kDegenerateLine);
}

TEST_CASE("Kukles monodromy follows a11^2 - 8 a30 < 0") {
  auto kukles = [](long a11, long a30) {
    std::string text = "kind general\nY 1 1 " + std::to_string(-a11) + "\nY 3 0 " + std::to_string(-a30) + "\n";
    return classify(parse_system(text));
  };
  const auto focus = kukles(1, 1);
  CHECK(focus.n == 2);
  CHECK(focus.a == -1);
  CHECK(focus.b == -1);
  CHECK(focus.discriminant() == -7);
  CHECK(focus.monodromic);
  CHECK(focus.p_n == 1);
  CHECK_FALSE(kukles(3, 1).monodromic);
  CHECK_FALSE(kukles(0, -1).monodromic);
}

TEST_CASE("parity index") {
  CHECK(parity_index(1) == 0);
  CHECK(parity_index(2) == 1);
  CHECK(parity_index(3) == 0);
  CHECK(parity_index(4) == 1);
}
