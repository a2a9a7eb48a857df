/* C interface to the hardylab library.
 *
 * Every function returns an hl_status. On failure, hl_last_error() returns a
 * message for the calling thread, valid until its next failing call. Handles
 * are opaque and owned by the caller, who frees them with the matching
 * *_destroy function. */
#ifndef HARDYLAB_H
#define HARDYLAB_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HL_API __declspec(dllexport)
#else
#define HL_API __attribute__((visibility("default")))
#endif

typedef enum hl_status {
  HL_OK = 0,
  HL_ERR_INVALID_ARGUMENT = 1,
  HL_ERR_REGIME_VIOLATION = 2,
  HL_ERR_Q_REQUIRED = 3,
  HL_ERR_DIMENSION_TOO_SMALL = 4,
  HL_ERR_QUADRATURE_FAILURE = 5,
  HL_ERR_QUADRATURE_INCONSISTENT = 6,
  HL_ERR_MU_UNDEFINED = 7,
  HL_ERR_EXPONENT_OUT_OF_RANGE = 8,
  HL_ERR_INVALID_LEVEL = 9,
  HL_ERR_NONNEG_REQUIRED = 10,
  HL_ERR_SHAPE_MISMATCH = 11,
  HL_ERR_KERNEL_SINGULARITY = 12,
  HL_ERR_SUPPORT_REQUIRED = 13,
  HL_ERR_FAMILY_INVALID = 14,
  HL_ERR_CONFIG = 15,
  HL_ERR_IO = 16,
  HL_ERR_INTERNAL = 17
} hl_status;

/* Message of the last failure on this thread ("" if none). */
HL_API const char* hl_last_error(void);
/* Stable identifier such as "regime-violation". */
HL_API const char* hl_status_name(hl_status status);

/* (p / (N - p - alpha))^p. */
HL_API hl_status hl_ckn_constant(int N, double p, double alpha, double* out);
/* Sphere exponent (N-1)/p, 1, or user_q at p = N - 1. Pass has_user_q = 0
 * when no exponent is supplied. */
HL_API hl_status hl_admissible_q(int N, double p, int has_user_q, double user_q, double* out);
/* |S^{N-1}|. */
HL_API hl_status hl_surface_measure(int N, double* out);

typedef struct hl_weight hl_weight;

HL_API hl_status hl_weight_constant(double c, hl_weight** out);
HL_API hl_status hl_weight_cap(double phi0, hl_weight** out);
HL_API hl_status hl_weight_zonal_power(double k, hl_weight** out);
HL_API hl_status hl_weight_sampled(const double* angles, const double* values, size_t n, hl_weight** out);
HL_API hl_status hl_weight_load_csv(const char* path, hl_weight** out);
HL_API void hl_weight_destroy(hl_weight* weight);
/* (int_{S^{N-1}} |g|^q)^{1/q}. */
HL_API hl_status hl_weight_lq_norm(const hl_weight* weight, double q, int N, double* out);

typedef struct hl_lambda_result {
  double lambda;           /* graded-Gauss value */
  double graded_gauss;
  double tanh_sinh;
  double rel_diff;         /* |graded - tanh| / graded */
  double est_error;
} hl_lambda_result;

/* Fractional Hardy constant by two independent quadrature schemes. */
HL_API hl_status hl_lambda(int N, double s, double p, hl_lambda_result* out);

typedef struct hl_report hl_report;

typedef struct hl_run_options {
  double bound_scale; /* test hook: multiplies every asserted bound; use 1 */
} hl_run_options;

/* Parses, validates and runs a JSON run configuration. `command`, when not
 * NULL, must match the configuration's command. `options` may be NULL. */
HL_API hl_status hl_run_config(const char* json_text, const char* command, const hl_run_options* options,
                               hl_report** out);
HL_API hl_status hl_run_config_file(const char* path, const char* command, const hl_run_options* options,
                                    hl_report** out);
HL_API size_t hl_report_row_count(const hl_report* report);
/* 0 when every verdict holds, 2 when an inequality is violated. */
HL_API int hl_report_exit_status(const hl_report* report);
/* Format from the configuration ("csv" or "json"). */
HL_API const char* hl_report_format(const hl_report* report);
/* Output path from the configuration, "" when none. */
HL_API const char* hl_report_output_path(const hl_report* report);
/* Writes rows to `path` (stdout when NULL or empty) with `<path>.meta.json`
 * beside it; `format` NULL means the configured format. */
HL_API hl_status hl_report_write(const hl_report* report, const char* path, const char* format);
/* Rendered rows; the string lives as long as the report. */
HL_API hl_status hl_report_render(const hl_report* report, const char* format, const char** out);
HL_API void hl_report_destroy(hl_report* report);

#ifdef __cplusplus
}
#endif

#endif /* HARDYLAB_H */
