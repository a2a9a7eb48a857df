#include "hardylab/error.hpp"

namespace hardylab {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::RegimeViolation: return "regime-violation";
    case ErrorCode::QRequired: return "q-required";
    case ErrorCode::DimensionTooSmall: return "dimension-too-small";
    case ErrorCode::QuadratureFailure: return "quadrature-failure";
    case ErrorCode::QuadratureInconsistent: return "quadrature-inconsistent";
    case ErrorCode::MuUndefined: return "mu-undefined";
    case ErrorCode::ExponentOutOfRange: return "exponent-out-of-range";
    case ErrorCode::InvalidLevel: return "invalid-level";
    case ErrorCode::NonnegRequired: return "nonneg-required";
    case ErrorCode::ShapeMismatch: return "shape-mismatch";
    case ErrorCode::KernelSingularity: return "kernel-singularity";
    case ErrorCode::SupportRequired: return "support-required";
    case ErrorCode::FamilyInvalid: return "family-invalid";
    case ErrorCode::ConfigError: return "config-error";
    case ErrorCode::IoError: return "io-error";
  }
  return "unknown";
}

}  // namespace hardylab
