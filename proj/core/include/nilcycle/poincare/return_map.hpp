#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nilcycle/poincare/polar_field.hpp"

namespace nilcycle {

struct ReturnPoint {
  double P = 0.0;
  double d = 0.0;
};

/// First return to the section curve through (x0, F(x0)), reported as the
/// x coordinate of the return point.
ReturnPoint return_map(const PolarField& field, double x0, IntegrationStats* stats = nullptr);

enum class Side { kPositive, kNegative };

struct ReturnSample {
  double x0;
  double P;
  double d;
};

struct ReturnMapTable {
  std::vector<ReturnSample> samples;
  Side side = Side::kPositive;
  IntegrationStats stats;
  /// Smallest normalized |denominator| met on the sample grid.
  double min_denominator = 0.0;
};

/// `count` points spaced geometrically between lo and hi (both > 0).
std::vector<double> geometric_grid(double lo, double hi, int count);

/// Return map on a grid of |x0| values; negative side negates them, so
/// x0 stays strictly monotone in the table.
ReturnMapTable sample_return_map(const PolarField& field, const std::vector<double>& magnitudes, Side side);

/// CSV with header `x0,P,d` and 17 significant digits.
void write_csv(std::ostream& os, const ReturnMapTable& table);
std::string format_float(double value);

struct FitOptions {
  int J = 8;
  double ill_conditioned = 1e12;
};

/// Least-squares estimates of v_1..v_J in d(x0) = sum v_j x0^j.
struct FittedFocal {
  std::vector<double> v;
  /// RMS of the weighted residual d/x0 - sum v_j x0^{j-1}.
  double residual = 0.0;
  /// Standard error of each v_j implied by the residual.
  std::vector<double> standard_error;
  /// Ratio of extreme singular values of the column-scaled design.
  double condition = 0.0;
  bool ill_conditioned = false;

  double at(int j) const { return j >= 1 && j <= static_cast<int>(v.size()) ? v[static_cast<std::size_t>(j - 1)] : 0.0; }
  double error_at(int j) const {
    return j >= 1 && j <= static_cast<int>(standard_error.size()) ? standard_error[static_cast<std::size_t>(j - 1)] : 0.0;
  }
};

/// Rows are weighted by 1/x0 so the uniform relative integration error
/// carries uniform weight; columns are scaled by max|x0|^j.
FittedFocal fit_focal(const ReturnMapTable& table, FitOptions options = {});
FittedFocal fit_focal(const std::vector<ReturnSample>& samples, FitOptions options = {});

/// Richardson extrapolation of lim d(x)/x^power along x0, x0/2, x0/4, ...
double richardson_leading(const std::function<double(double)>& d, int power, double x0, int levels);

}  // namespace nilcycle
