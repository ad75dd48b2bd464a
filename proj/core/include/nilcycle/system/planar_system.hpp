#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "nilcycle/series/bivariate.hpp"
#include "nilcycle/series/truncated_series.hpp"

namespace nilcycle {

enum class SystemKind { kGeneral, kLienard };

std::string_view to_string(SystemKind kind);

/// Planar field  x' = y + X(x, y),  y' = Y(x, y)  near a nilpotent origin.
///
/// Systems read with orientation -1 (x' = -y + ...) are stored after the
/// substitution y -> -y; `input_orientation` keeps the original sign so
/// results can be mapped back.
struct PlanarSystem {
  BivariateTruncated X;
  BivariateTruncated Y;
  SystemKind kind = SystemKind::kGeneral;
  int input_orientation = +1;
  int series_order = kDefaultOrderCap;
  std::string label;
};

/// Liénard data y' = -g(x) - y f(x).
struct LienardParts {
  TruncatedSeries g;
  TruncatedSeries f;
};

/// Builds the Liénard-kind system with X = 0, Y = -g - y f.
PlanarSystem make_lienard(const TruncatedSeries& g, const TruncatedSeries& f,
                          int order = kDefaultOrderCap, std::string label = {});

/// Parses a PVF document. Throws Error(kParseError) with the line number on
/// malformed input and Error(kInvalidLowOrderTerms) on forbidden terms.
PlanarSystem parse_system(std::string_view text, std::string label = {});
PlanarSystem load_system(const std::filesystem::path& path);

/// PVF rendering of a normalized system (orientation +1).
std::string format_system(const PlanarSystem& sys);

/// y = F(x) solving y + X(x, y) = 0 with F(0) = 0, through the series order.
TruncatedSeries section_curve(const PlanarSystem& sys);
TruncatedSeries section_curve(const PlanarSystem& sys, int order);

/// g = -Y(x, F(x)),  f = -(X_x + Y_y)(x, F(x)).
LienardParts extract_fg(const PlanarSystem& sys);
LienardParts extract_fg(const PlanarSystem& sys, const TruncatedSeries& section);

/// Monodromy classification of the origin from (g, f).
struct NilpotentClass {
  int n = 0;
  /// Coefficient of x^{2n-1} in Y(x, F(x)), i.e. minus the leading
  /// coefficient of g.
  Rational a;
  /// Coefficient of x^{n-1} in the divergence along y = F(x).
  Rational b;
  bool monodromic = false;
  int p_n = 0;
  /// Divergence has terms below x^{n-1}; the linear part is then not
  /// nilpotent and the criterion does not apply.
  bool low_order_divergence = false;

  Rational discriminant() const { return b * b + 4 * a * n; }
};

int parity_index(int n);

NilpotentClass classify_nilpotent(const TruncatedSeries& g, const TruncatedSeries& f);
NilpotentClass classify(const PlanarSystem& sys);

/// Removes every monomial of total degree above m from X and Y.
PlanarSystem truncate_degree(const PlanarSystem& sys, int m);

/// Degree-filtered Liénard data of a Liénard-kind system.
LienardParts lienard_parts(const PlanarSystem& sys);

}  // namespace nilcycle
