#ifndef CPRLAB_ERROR_HPP_
#define CPRLAB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace cprlab {

enum class ErrorCode {
  kNotHermitian,
  kNoConvergence,
  kNotPositiveDefinite,
  kNotPSD,
  kDimensionMismatch,
  kSingular,
  kInvalidParams,
  kZeroEigenvalue,
  kZeroLambda,
  kInvalidK,
  kDegenerateDenominator,
  kSamplerExhausted,
  kConfigInvalid,
  kIoFailure,
  kUsageError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (tests, the campaign runner) can branch on the kind of failure.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotHermitian: return "NotHermitian";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kNotPSD: return "NotPSD";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kSingular: return "Singular";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::kZeroLambda: return "ZeroLambda";
    case ErrorCode::kInvalidK: return "InvalidK";
    case ErrorCode::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::kSamplerExhausted: return "SamplerExhausted";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kUsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace cprlab

#endif  // CPRLAB_ERROR_HPP_
