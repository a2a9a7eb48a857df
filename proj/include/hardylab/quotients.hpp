#pragma once

// Both sides of the weighted Hardy inequalities for separated test functions
// u(r, phi) = f(r) h(phi), per-inequality verification reports, and
// sharpness sweeps along near-optimizer families.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardylab/fractional.hpp"
#include "hardylab/profiles.hpp"
#include "hardylab/regimes.hpp"
#include "hardylab/sphere.hpp"

namespace hardylab {

struct QuotientOptions {
  SphereQuadrature sphere{};
  RadialQuadrature radial{};
  SeminormOptions seminorm{};
  double slack_tolerance = 1e-9;  ///< relative to the bound
};

/// int g(x/|x|) |u|^p / |x|^{p+alpha} dx.
double lhs_weighted(const TestFunction& u, const SphericalWeight& g, const Regime& regime,
                    const QuotientOptions& opt = {});

/// int |u|^p / |x|^degree dx (g = 1).
double weighted_moment(const TestFunction& u, double p, double degree, int N,
                       const QuotientOptions& opt = {});

/// int |grad u|^p / |x|^alpha dx with |grad u|^2 = f'^2 h^2 + f^2 h'^2 / r^2.
double gradient_energy(const TestFunction& u, const Regime& regime, const QuotientOptions& opt = {});

struct Hardy1D {
  double lhs = 0.0;                ///< int |f|^p r^{beta-p} dr
  double rhs_with_constant = 0.0;  ///< (p/(beta-p+1))^p int |f'|^p r^beta dr
  double constant = 0.0;
  double ratio() const { return rhs_with_constant > 0.0 ? lhs / rhs_with_constant : 0.0; }
};

/// One-dimensional weighted Hardy inequality, beta > p - 1.
Hardy1D radial_hardy_1d(const RadialProfile& f, double p, double beta,
                        const RadialQuadrature& rq = {});

/// The inequalities that can be verified.
enum class Check {
  WeightedLq,    ///< ||g||_q times a non-explicit constant (empirical)
  SharpL2Case1,  ///< p = 2, q = (N-alpha-2)^2 / (2(N-1)) + 1
  SharpL2Case2,  ///< p = 2, q = (N-1)/2, three-term form with gamma0
  SharpL2Case3,  ///< p = 2, q = (N-1)/2
  Homogeneous,   ///< sharp constant through the rearranged weight, g >= 0
  Fractional,    ///< fractional Hardy with homogeneous weight, g >= 0
};

std::string_view check_name(Check check);  ///< "weighted-lq", "sharp-l2", ...
std::string_view check_case(Check check);  ///< "case1".."case3" or ""

struct QuotientReport {
  std::string theorem;
  std::string case_id;
  std::string weight;
  std::string test;
  int N = 0;
  double p = 0.0;
  double alpha = 0.0;
  std::optional<double> s;
  std::optional<double> q;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> extra;  ///< subtracted term of the three-term form
  std::optional<double> gamma0;
  double bound = 0.0;
  double quotient = 0.0;
  double margin = 0.0;  ///< bound - quotient
  bool holds = false;
  bool empirical = false;              ///< bound is not a proven constant
  bool reduction_to_classical = false; ///< constant weight, classical constant
  std::string scheme;
  double est_error = 0.0;
  std::vector<std::string> notes;
};

struct VerifyInput {
  Check check = Check::Homogeneous;
  TestFunction u;
  SphericalWeight g = SphericalWeight::constant(1.0);
  int N = 0;
  double p = 2.0;
  double alpha = 0.0;
  double s = 0.5;                           ///< fractional only
  std::optional<double> user_q;             ///< weighted-lq at p = N - 1
  std::optional<double> empirical_constant; ///< weighted-lq bound
  std::optional<LambdaCrossCheck> lambda;   ///< fractional: reuse a computed constant
  std::optional<double> seminorm;           ///< fractional: reuse the seminorm of u
  double bound_scale = 1.0;                 ///< test hook: multiplies the bound
};

QuotientReport verify_case(const VerifyInput& in, const QuotientOptions& opt = {});

/// Near-optimizer family: truncated powers r^{a_k} with a_k = a* + 2^{-k}
/// approaching the formal optimizer exponent a*, inner cut 4^{-k}, outer
/// radius R and a log-linear taper of log-width k ln 2.
struct SweepFamily {
  std::string name = "power";
  double outer_radius = 1.0;
  int steps = 8;

  static SweepFamily make(std::string name, double outer_radius, int steps);
  RadialProfile member(double optimizer_exponent, int k) const;
};

/// Sweeps along the family. `check` is Homogeneous (local CKN-type, p free)
/// or Fractional; the report's quotient is lhs/rhs and bound the sharp constant.
std::vector<QuotientReport> sharpness_sweep(Check check, const SphericalWeight& g, int N, double p,
                                            double alpha_or_s, const SweepFamily& family,
                                            const QuotientOptions& opt = {});

/// One-dimensional sweep: f_k = r^{a_k} with a_k = -(beta-p+1)/p + 2^{-k},
/// inner cut 10^{-4k}, taper log-width 2k. Only finite ratios, in order.
std::vector<Hardy1D> hardy_1d_sweep(double p, double beta, int steps,
                                    const RadialQuadrature& rq = {});

}  // namespace hardylab
