#pragma once

// Separated trial functions u(r, phi) = f(r) h(phi): compactly supported,
// piecewise-differentiable radial profiles and zonal angular factors, plus the
// radial integration rule shared by the local and fractional modules.

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hardylab {

class RadialProfile {
 public:
  enum class Kind { Tent, TruncatedPower, ExpBump, Sampled };

  /// max(0, 1 - r/R).
  static RadialProfile tent(double R);
  /// (r0/R)^a on [0, r0], (r/R)^a on [r0, R], then the tapered power
  /// (r/R)^a (1 - ln(r/R)/w) on [R, R e^w] and zero beyond.
  static RadialProfile truncated_power(double a, double r0, double R, double w);
  /// exp(-r/scale) - exp(-R/scale) on [0, R], zero beyond.
  static RadialProfile exp_bump(double scale, double R);
  /// Linear interpolation on a strictly increasing grid r_i > 0; constant v_0
  /// below r_0 and zero above the last node (the last value must then be 0
  /// for the profile to be compactly supported and continuous).
  static RadialProfile sampled(std::vector<double> r, std::vector<double> v);
  /// Log-spaced table of `f` on [r_min, r_max] with n nodes.
  static RadialProfile log_sampled(const std::function<double(double)>& f, double r_min,
                                   double r_max, int n);

  /// c f(r).
  RadialProfile scaled(double c) const;
  /// f(lambda r).
  RadialProfile dilated(double lambda) const;

  double value(double r) const;
  /// Right derivative at kinks.
  double derivative(double r) const;

  /// Sorted positive radii where f is not smooth; the last one is the support
  /// radius for compact profiles.
  std::vector<double> breakpoints() const;
  double support() const;
  bool compact() const;
  /// Global Lipschitz constant sup |f'|.
  double lipschitz() const;

  Kind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  double dilation() const { return dilation_; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& table_r() const { return r_; }
  const std::vector<double>& table_v() const { return v_; }
  std::string name() const;

 private:
  RadialProfile() = default;

  double base_value(double x) const;
  double base_derivative(double x) const;
  std::vector<double> base_breakpoints() const;
  double base_lipschitz() const;

  Kind kind_ = Kind::Tent;
  std::vector<double> params_;
  std::vector<double> r_;
  std::vector<double> v_;
  double amplitude_ = 1.0;
  double dilation_ = 1.0;
};

class AngularFactor {
 public:
  enum class Kind { One, Cos, CapSmooth };

  static AngularFactor one();
  static AngularFactor cos();
  /// 1 on [0, phi0], linear down to 0 on [phi0, phi0 + ramp], zero beyond.
  static AngularFactor cap_smooth(double phi0, double ramp);

  double value(double phi) const;
  double derivative(double phi) const;
  std::vector<double> kinks() const;
  bool is_constant() const { return kind_ == Kind::One; }

  Kind kind() const { return kind_; }
  double phi0() const { return phi0_; }
  double ramp() const { return ramp_; }
  std::string name() const;

 private:
  Kind kind_ = Kind::One;
  double phi0_ = 0.0;
  double ramp_ = 0.0;
};

struct TestFunction {
  RadialProfile radial = RadialProfile::tent(1.0);
  AngularFactor angular = AngularFactor::one();

  std::string name() const;
};

struct RadialQuadrature {
  double tolerance = 1e-12;  ///< relative target per radial integral
  double max_ratio = 2.0;    ///< geometric grading between breakpoints

  static RadialQuadrature make(double tolerance, double max_ratio);
};

/// int_0^{breakpoints.back()} G(r) dr where G behaves like r^gamma (gamma > -1)
/// at the origin. The first piece [0, b_0] uses r = b_0 v^{1/(gamma+1)}; the
/// remaining pieces are graded geometrically. The rule only depends on the
/// breakpoints, so it is exactly equivariant under dilation.
double integrate_radial(const std::function<double(double)>& G,
                        std::span<const double> breakpoints, double gamma,
                        const RadialQuadrature& rq);

/// Fixed nodes and weights for int_0^{breakpoints.back()} G(r) dr, G ~ r^gamma
/// at the origin: a power-mapped innermost panel, then geometric panels
/// (ratio <= `ratio`) between 0 < b_0 * 2^-depth, b_0, b_1, ... With
/// kink_depth > 0 the panels are also graded toward both sides of every
/// breakpoint, down to 2^-kink_depth of the adjoining interval.
struct RadialRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
RadialRule fixed_radial_rule(std::span<const double> breakpoints, double gamma, int n,
                             double ratio = 2.0, int depth = 20, int kink_depth = 0);

}  // namespace hardylab
