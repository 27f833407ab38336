#include "sfh/error.hpp"

namespace sfh {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotConvex: return "NotConvex";
    case ErrorCode::kOriginNotInterior: return "OriginNotInterior";
    case ErrorCode::kDegenerateInput: return "DegenerateInput";
    case ErrorCode::kNotOnBoundary: return "NotOnBoundary";
    case ErrorCode::kOriginInput: return "OriginInput";
    case ErrorCode::kOriginCrossing: return "OriginCrossing";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kNegativeComponent: return "NegativeComponent";
    case ErrorCode::kValueOutsideFace: return "ValueOutsideFace";
    case ErrorCode::kSideConditionViolated: return "SideConditionViolated";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kSpecInvariantViolated: return "SpecInvariantViolated";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kNotApplicable: return "NotApplicable";
    case ErrorCode::kZeroCovector: return "ZeroCovector";
    case ErrorCode::kDimensionUnsupported: return "DimensionUnsupported";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace sfh
