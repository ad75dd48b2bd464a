#include "nilcycle/error.hpp"

namespace nilcycle {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDivisionBySingularSeries: return "DivisionBySingularSeries";
    case ErrorCode::kCompositionRequiresZeroConstant: return "CompositionRequiresZeroConstant";
    case ErrorCode::kNotInvertibleAtOrigin: return "NotInvertibleAtOrigin";
    case ErrorCode::kRootBranchUndefined: return "RootBranchUndefined";
    case ErrorCode::kRootOfNonpositiveLeading: return "RootOfNonpositiveLeading";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidLowOrderTerms: return "InvalidLowOrderTerms";
    case ErrorCode::kNotOddLeadingPower: return "NotOddLeadingPower";
    case ErrorCode::kDegenerateLine: return "DegenerateLine";
    case ErrorCode::kHypothesisViolation: return "HypothesisViolation";
    case ErrorCode::kDenominatorNearZero: return "DenominatorNearZero";
    case ErrorCode::kStepUnderflow: return "StepUnderflow";
    case ErrorCode::kIllConditionedFit: return "IllConditionedFit";
    case ErrorCode::kUnachievableLadder: return "UnachievableLadder";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace nilcycle
