#include "hardylab.h"

#include <exception>
#include <new>
#include <string>

#include "hardylab/config.hpp"
#include "hardylab/error.hpp"
#include "hardylab/fractional.hpp"
#include "hardylab/regimes.hpp"
#include "hardylab/report.hpp"
#include "hardylab/sphere.hpp"

struct hl_weight {
  hardylab::SphericalWeight g;
};

struct hl_report {
  hardylab::Report report;
  std::string format;
  std::string output_path;
  mutable std::string rendered;
};

namespace {

thread_local std::string last_error;

hl_status status_of(hardylab::ErrorCode code) {
  using hardylab::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return HL_ERR_INVALID_ARGUMENT;
    case ErrorCode::RegimeViolation: return HL_ERR_REGIME_VIOLATION;
    case ErrorCode::QRequired: return HL_ERR_Q_REQUIRED;
    case ErrorCode::DimensionTooSmall: return HL_ERR_DIMENSION_TOO_SMALL;
    case ErrorCode::QuadratureFailure: return HL_ERR_QUADRATURE_FAILURE;
    case ErrorCode::QuadratureInconsistent: return HL_ERR_QUADRATURE_INCONSISTENT;
    case ErrorCode::MuUndefined: return HL_ERR_MU_UNDEFINED;
    case ErrorCode::ExponentOutOfRange: return HL_ERR_EXPONENT_OUT_OF_RANGE;
    case ErrorCode::InvalidLevel: return HL_ERR_INVALID_LEVEL;
    case ErrorCode::NonnegRequired: return HL_ERR_NONNEG_REQUIRED;
    case ErrorCode::ShapeMismatch: return HL_ERR_SHAPE_MISMATCH;
    case ErrorCode::KernelSingularity: return HL_ERR_KERNEL_SINGULARITY;
    case ErrorCode::SupportRequired: return HL_ERR_SUPPORT_REQUIRED;
    case ErrorCode::FamilyInvalid: return HL_ERR_FAMILY_INVALID;
    case ErrorCode::ConfigError: return HL_ERR_CONFIG;
    case ErrorCode::IoError: return HL_ERR_IO;
  }
  return HL_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread's message.
template <class F>
hl_status guarded(F&& body) {
  try {
    body();
    return HL_OK;
  } catch (const hardylab::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return HL_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal: unknown exception";
    return HL_ERR_INTERNAL;
  }
}

hl_status null_argument(const char* what) {
  last_error = std::string("invalid-argument: ") + what + " must not be NULL";
  return HL_ERR_INVALID_ARGUMENT;
}

hl_status make_weight(hl_weight** out, const auto& factory) {
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new hl_weight{factory()}; });
}

hl_status finish_run(hardylab::RunConfig config, const char* command, const hl_run_options* options,
                     hl_report** out) {
  if (command && hardylab::command_name(config.command) != command) {
    hardylab::fail(hardylab::ErrorCode::ConfigError,
                   "command '" + std::string(command) + "' does not match config command '" +
                       std::string(hardylab::command_name(config.command)) + "'");
  }
  hardylab::RunOptions opt;
  if (options) opt.bound_scale = options->bound_scale;
  auto* rep = new hl_report{hardylab::run(config, opt), config.format, config.output_path, {}};
  *out = rep;
  return HL_OK;
}

}  // namespace

extern "C" {

const char* hl_last_error(void) { return last_error.c_str(); }

const char* hl_status_name(hl_status status) {
  switch (status) {
    case HL_OK: return "ok";
    case HL_ERR_INTERNAL: return "internal";
    default: break;
  }
  if (status > HL_OK && status < HL_ERR_INTERNAL) {
    for (int c = 0; c <= static_cast<int>(hardylab::ErrorCode::IoError); ++c) {
      auto code = static_cast<hardylab::ErrorCode>(c);
      if (status_of(code) == status) return hardylab::error_code_name(code).data();
    }
  }
  return "unknown";
}

hl_status hl_ckn_constant(int N, double p, double alpha, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = hardylab::ckn_sharp_constant(hardylab::Regime::local(N, p, alpha)); });
}

hl_status hl_admissible_q(int N, double p, int has_user_q, double user_q, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    *out = hardylab::admissible_q(N, p, has_user_q ? std::optional<double>(user_q) : std::nullopt);
  });
}

hl_status hl_surface_measure(int N, double* out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = hardylab::surface_measure(N); });
}

hl_status hl_weight_constant(double c, hl_weight** out) {
  return make_weight(out, [&] { return hardylab::SphericalWeight::constant(c); });
}

hl_status hl_weight_cap(double phi0, hl_weight** out) {
  return make_weight(out, [&] { return hardylab::SphericalWeight::cap(phi0); });
}

hl_status hl_weight_zonal_power(double k, hl_weight** out) {
  return make_weight(out, [&] { return hardylab::SphericalWeight::zonal_power(k); });
}

hl_status hl_weight_sampled(const double* angles, const double* values, size_t n, hl_weight** out) {
  if (n > 0 && (!angles || !values)) return null_argument("angles/values");
  return make_weight(out, [&] {
    return hardylab::SphericalWeight::sampled(std::vector<double>(angles, angles + n),
                                              std::vector<double>(values, values + n));
  });
}

hl_status hl_weight_load_csv(const char* path, hl_weight** out) {
  if (!path) return null_argument("path");
  return make_weight(out, [&] { return hardylab::SphericalWeight::load_csv(path); });
}

void hl_weight_destroy(hl_weight* weight) { delete weight; }

hl_status hl_weight_lq_norm(const hl_weight* weight, double q, int N, double* out) {
  if (!weight) return null_argument("weight");
  if (!out) return null_argument("out");
  return guarded([&] { *out = hardylab::lq_norm(weight->g, q, N, hardylab::SphereQuadrature{}); });
}

hl_status hl_lambda(int N, double s, double p, hl_lambda_result* out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const auto lam = hardylab::lambda_cross_validated(hardylab::FracRegime::make(N, s, p));
    *out = {lam.lambda, lam.graded.lambda, lam.tanh_sinh.lambda, lam.rel_diff, lam.est_error};
  });
}

hl_status hl_run_config(const char* json_text, const char* command, const hl_run_options* options,
                        hl_report** out) {
  if (!json_text) return null_argument("json_text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { finish_run(hardylab::parse_config(json_text), command, options, out); });
}

hl_status hl_run_config_file(const char* path, const char* command, const hl_run_options* options,
                             hl_report** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] { finish_run(hardylab::load_config(path), command, options, out); });
}

size_t hl_report_row_count(const hl_report* report) { return report ? report->report.rows.size() : 0; }

int hl_report_exit_status(const hl_report* report) { return report ? report->report.exit_status() : 1; }

const char* hl_report_format(const hl_report* report) { return report ? report->format.c_str() : ""; }

const char* hl_report_output_path(const hl_report* report) {
  return report ? report->output_path.c_str() : "";
}

hl_status hl_report_write(const hl_report* report, const char* path, const char* format) {
  if (!report) return null_argument("report");
  return guarded([&] {
    hardylab::emit_report(report->report, format ? format : report->format, path ? path : "");
  });
}

hl_status hl_report_render(const hl_report* report, const char* format, const char** out) {
  if (!report) return null_argument("report");
  if (!out) return null_argument("out");
  return guarded([&] {
    report->rendered = hardylab::format_rows(report->report.rows, format ? format : report->format);
    *out = report->rendered.c_str();
  });
}

void hl_report_destroy(hl_report* report) { delete report; }

}  // extern "C"
