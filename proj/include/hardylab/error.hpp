#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardylab {

enum class ErrorCode {
  InvalidArgument,
  RegimeViolation,
  QRequired,
  DimensionTooSmall,
  QuadratureFailure,
  QuadratureInconsistent,
  MuUndefined,
  ExponentOutOfRange,
  InvalidLevel,
  NonnegRequired,
  ShapeMismatch,
  KernelSingularity,
  SupportRequired,
  FamilyInvalid,
  ConfigError,
  IoError,
};

/// Stable kebab-case identifier for an error code, e.g. "q-required".
std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace hardylab
