#pragma once

// Zonal angular weights on S^{N-1} (functions of the polar angle measured from
// a fixed axis), their integrals and L^q norms, and the Gagliardo-Nirenberg
// function mu on the sphere.
//
// Every zonal integral reduces to
//   int_{S^{N-1}} g = |S^{N-2}| int_0^pi g(phi) sin^{N-2}(phi) dphi,   N >= 2,
// and for N = 1 the sphere S^0 = {phi = 0, phi = pi} carries counting measure.

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hardylab {

/// |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2).
double surface_measure(int N);

struct SphereQuadrature {
  int angular_nodes = 32;    ///< Gauss nodes per angular piece in product rules
  double tolerance = 1e-13;  ///< relative target for adaptive angular integrals

  static SphereQuadrature make(int angular_nodes, double tolerance);
};

class SphericalWeight {
 public:
  enum class Kind { Constant, CapIndicator, ZonalPower, SampledZonal };

  /// g = c (c >= 0).
  static SphericalWeight constant(double c);
  /// g = 1 for phi <= phi0, 0 beyond; phi0 in (0, pi].
  static SphericalWeight cap(double phi0);
  /// g = |cos phi|^k, k >= 0.
  static SphericalWeight zonal_power(double k);
  /// Piecewise-linear table on a strictly increasing grid covering [0, pi].
  static SphericalWeight sampled(std::vector<double> angles, std::vector<double> values);
  /// Two-column CSV: angle in radians, value. A non-numeric first line is
  /// treated as a header; '#' starts a comment.
  static SphericalWeight load_csv(const std::string& path);

  SphericalWeight scaled(double factor) const;

  double operator()(double phi) const;

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  double amplitude() const { return amplitude_; }
  const std::vector<double>& angles() const { return angles_; }
  const std::vector<double>& values() const { return values_; }

  /// Interior angles in (0, pi) where g is not smooth.
  std::vector<double> kinks() const;
  /// All values >= 0.
  bool nonneg() const { return nonneg_; }
  std::string name() const;

 private:
  SphericalWeight() = default;

  Kind kind_ = Kind::Constant;
  double param_ = 1.0;
  double amplitude_ = 1.0;
  std::vector<double> angles_;
  std::vector<double> values_;
  bool nonneg_ = true;
};

/// Integral over S^{N-1} of a zonal function given on [0, pi].
double integrate_zonal(const std::function<double(double)>& g,
                       std::span<const double> kinks, int N,
                       const SphereQuadrature& quad);

double integrate_zonal(const SphericalWeight& g, int N, const SphereQuadrature& quad);

/// (int |g|^q)^{1/q}, q >= 1.
double lq_norm(const SphericalWeight& g, double q, int N, const SphereQuadrature& quad);

/// Fixed product-rule factor in the polar angle. Weights include
/// |S^{N-2}| sin^{N-2}(phi); for N = 1 the two poles with weight 1.
struct AngularRule {
  std::vector<double> phi;
  std::vector<double> weight;
};

AngularRule angular_rule(int N, std::span<const double> kinks, int nodes_per_piece);

/// Gagliardo-Nirenberg function on S^{N-1}. For subcritical t returns beta on
/// [0, (N-1)/(t-2)] and refuses beyond; at t = 2(N-1)/(N-3) (N > 3) returns
/// min(beta, (N-1)(N-3)/4).
double mu_gn(double beta, int N, double t);

}  // namespace hardylab
