#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nilcycle/series/truncated_series.hpp"

namespace nilcycle {

/// f-bar of the canonical form x' = y, y' = -x^{2n-1} - y fbar(x).
///
/// With sigma = a^{1/2n} possibly irrational, fbar(x) = sigma^{2n-1}
/// rescaled(x / sigma), so the j-th coefficient is
/// sigma^{2n-1-j} * rescaled[j]. Every sign decision reads `rescaled`.
struct FbarSeries {
  TruncatedSeries rescaled;
  Rational scale_radicand{1};
  int scale_index = 1;
  int n = 2;

  double sigma() const;
  double coefficient(int j) const;
  int coefficient_sign(int j) const { return sgn(rescaled[j]); }
  /// Exact value of b_{n-1}^2 (the sigma powers collapse to the radicand).
  Rational leading_square() const;
};

/// Liénard normal-form data  x' = y, y' = -g(x) - y f(x).
struct LienardData {
  TruncatedSeries g;
  TruncatedSeries f;
  int n = 0;
  /// a_{2n-1} > 0, leading coefficient of g.
  Rational a_lead;
  TruncatedSeries F;
  TruncatedSeries G;
  /// u(x) = [2n G(x)]^{1/2n} sgn(x).
  ScaledSeries u;
  FbarSeries fbar;
  /// Involution with G(alpha(x)) = G(x), alpha(x) = -x + O(x^2).
  TruncatedSeries alpha;
};

/// Canonical reduction of a Liénard system. Throws
/// Error(kHypothesisViolation) unless g = a x^{2n-1} + ..., n >= 2, a > 0.
LienardData build_lienard(const TruncatedSeries& g, const TruncatedSeries& f);

enum class Stability { kStable, kUnstable, kUndetermined, kCenterCandidate };

std::string_view to_string(Stability s);

enum class HypothesisCase { kNone, kN2Focus, kSymmetric };

std::string_view to_string(HypothesisCase c);

struct FocalReport {
  int n = 0;
  int p_n = 0;
  /// B[j - 1] is the coefficient of x^j in F(alpha(x)) - F(x).
  std::vector<Rational> B;
  std::optional<int> first_odd_nonzero;
  /// k for a focus of order k, i.e. first nonzero at index 2[n/2] + 2k + 1.
  std::optional<int> focus_order;
  Stability stability = Stability::kUndetermined;
  /// The first nonzero odd coefficient sits below 2[n/2] + 1; the sign
  /// then describes a node.
  bool node_range = false;
  /// f has no terms below x^{n-1} and b_{n-1}^2 - 4 n a_{2n-1} < 0.
  bool monodromic = false;
  /// g odd and f odd: the origin is a reversible center.
  bool symmetric_center = false;
  HypothesisCase hypothesis_case = HypothesisCase::kNone;

  const Rational& coefficient(int j) const;
};

/// Index 2[n/2] + 1 of the first B governing the focus.
int first_focus_index(int n);

FocalReport focal_B(const LienardData& data);

/// Stability from the sign of the first nonzero even-index coefficient of
/// fbar (Filippov). Undetermined when fbar violates the monodromy bound.
Stability filippov_check(const LienardData& data);

/// B_1 .. B_order as exact values for the given (g, f).
std::vector<Rational> focal_coefficients(const TruncatedSeries& g, const TruncatedSeries& f);

}  // namespace nilcycle
