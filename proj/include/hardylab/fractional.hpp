#pragma once

// The zonal kernel Psi_{N,s,p}, the sharp fractional Hardy constant
// Lambda_{N,s,p}, and the Gagliardo seminorm of radial functions.

#include <optional>
#include <string_view>

#include "hardylab/profiles.hpp"
#include "hardylab/regimes.hpp"
#include "hardylab/sphere.hpp"

namespace hardylab {

/// Psi(r) = |S^{N-2}| int_{-1}^{1} (1-t^2)^{(N-3)/2} (1 - 2rt + r^2)^{-(N+sp)/2} dt
/// for N >= 2, and (1-r)^{-(1+sp)} + (1+r)^{-(1+sp)} for N = 1; 0 <= r < 1.
double psi(const FracRegime& frac, double r);

/// Psi(1 - w) w^{1+sp} for w in (0, 1]. Bounded as w -> 0, so it can be
/// evaluated arbitrarily close to the singularity.
double psi_scaled(const FracRegime& frac, double w);

/// lim_{w -> 0} psi_scaled(w).
double psi_scaled_limit(const FracRegime& frac);

namespace detail {
/// Hypergeometric series |S^{N-1}| 2F1((N+sp)/2, (sp+2)/2; N/2; r^2), r <= 0.75.
double psi_series(const FracRegime& frac, double r);
/// Polar-angle quadrature of psi_scaled (N >= 2).
double psi_scaled_quadrature(const FracRegime& frac, double w);
}  // namespace detail

enum class LambdaScheme { GradedGauss, TanhSinh };

std::string_view scheme_name(LambdaScheme scheme);
std::optional<LambdaScheme> parse_scheme(std::string_view name);

struct LambdaResult {
  FracRegime frac;
  double lambda = 0.0;
  /// int_0^1 r^{sp-1} |1 - r^{(N-sp)/p}|^p Psi(r) dr, so lambda = 1 / (2 * this).
  double inverse_integral = 0.0;
  LambdaScheme scheme = LambdaScheme::GradedGauss;
  /// |lambda - lambda at the next refinement|.
  double est_error = 0.0;
};

/// r^{sp-1} |1 - r^{(N-sp)/p}|^p Psi(r).
double lambda_integrand(const FracRegime& frac, double r);

/// Lambda by one scheme. `refine` doubles the panel order (graded Gauss) or
/// adds tanh-sinh levels beyond the converged one.
LambdaResult lambda_constant(const FracRegime& frac, LambdaScheme scheme, int refine = 0);

struct LambdaCrossCheck {
  LambdaResult graded;
  LambdaResult tanh_sinh;
  double lambda = 0.0;     ///< graded-Gauss value
  double rel_diff = 0.0;   ///< |graded - tanh| / graded
  double est_error = 0.0;  ///< max of the scheme errors and their difference
};

/// Both schemes; throws quadrature-inconsistent beyond 1e-6 relative.
LambdaCrossCheck lambda_cross_validated(const FracRegime& frac);

struct SeminormOptions {
  double tolerance = 1e-10;  ///< diagonal band bound relative to the value
  int radial_nodes = 16;     ///< Gauss order per radial panel
  int kink_depth = 12;       ///< radial grading toward profile breakpoints
  int kernel_nodes = 12;     ///< Gauss order per panel in w = 1 - rho/r
  int uniform_panels = 64;   ///< panels of width 1/64 on [1/64, 1]
};

struct SeminormResult {
  double value = 0.0;
  double near = 0.0;        ///< both radii inside twice the support
  double far = 0.0;         ///< larger radius beyond twice the support
  double band_bound = 0.0;  ///< bound on the excluded diagonal band
  double band_width = 0.0;  ///< eta
};

/// int int |u(x) - u(y)|^p / |x - y|^{N+sp} dx dy for u(x) = f(|x|).
SeminormResult frac_seminorm_radial_detailed(const RadialProfile& f, const FracRegime& frac,
                                             const SeminormOptions& opt = {});
double frac_seminorm_radial(const RadialProfile& f, const FracRegime& frac,
                            const SeminormOptions& opt = {});

/// int g(x/|x|) |f(|x|)|^p / |x|^{sp} dx = (int g) int |f|^p r^{N-sp-1} dr.
double frac_lhs_radial(const RadialProfile& f, const SphericalWeight& g, const FracRegime& frac,
                       const SphereQuadrature& quad, const RadialQuadrature& rq = {});

}  // namespace hardylab
