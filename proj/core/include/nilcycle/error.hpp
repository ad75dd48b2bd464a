#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilcycle {

enum class ErrorCode {
  kDivisionBySingularSeries,
  kCompositionRequiresZeroConstant,
  kNotInvertibleAtOrigin,
  kRootBranchUndefined,
  kRootOfNonpositiveLeading,
  kParseError,
  kInvalidLowOrderTerms,
  kNotOddLeadingPower,
  kDegenerateLine,
  kHypothesisViolation,
  kDenominatorNearZero,
  kStepUnderflow,
  kIllConditionedFit,
  kUnachievableLadder,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorCode code);

/// Typed failure raised by every nilcycle module. `code()` identifies the
/// failure class; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nilcycle
