#pragma once

#include <stdexcept>
#include <string>

namespace sfh {

enum class ErrorCode {
  kNotConvex,
  kOriginNotInterior,
  kDegenerateInput,
  kNotOnBoundary,
  kOriginInput,
  kOriginCrossing,
  kDomainError,
  kNegativeComponent,
  kValueOutsideFace,
  kSideConditionViolated,
  kNotSymmetric,
  kNotPositiveDefinite,
  kSpecInvariantViolated,
  kDimensionMismatch,
  kTooFewSamples,
  kNotApplicable,
  kZeroCovector,
  kDimensionUnsupported,
  kConfig,
};

const char* to_string(ErrorCode code);

/// Library-wide exception; every failure path carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sfh
