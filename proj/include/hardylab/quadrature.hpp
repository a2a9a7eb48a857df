#pragma once

// One-dimensional quadrature primitives shared by every module: cached
// Gauss-Legendre rules, globally adaptive Gauss-Kronrod (G7/K15) over a set of
// breakpoints, and a level-refined tanh-sinh rule whose integrand receives the
// distances to both endpoints so algebraic endpoint singularities can be
// evaluated without cancellation.

#include <functional>
#include <span>
#include <vector>

namespace hardylab::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the n-point rule; rules are computed once and cached (thread-safe).
const Rule& gauss_legendre(int n);

struct Estimate {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = true;
  int level = 0;  ///< final refinement level (tanh-sinh only)
};

struct Tolerance {
  double rel = 1e-12;
  double abs = 0.0;
  int max_intervals = 4000;
};

using Integrand = std::function<double(double)>;

/// Fixed n-point Gauss-Legendre on [a, b].
double gauss_fixed(const Integrand& f, double a, double b, int n);

/// Composite fixed rule over consecutive breakpoints.
double gauss_composite(const Integrand& f, std::span<const double> breakpoints,
                       int n);

/// Globally adaptive G7/K15 on [a, b].
Estimate adaptive(const Integrand& f, double a, double b, const Tolerance& tol = {});

/// Globally adaptive G7/K15 over the pieces [bp[i], bp[i+1]]; the error target
/// applies to the total.
Estimate adaptive(const Integrand& f, std::span<const double> breakpoints,
                  const Tolerance& tol = {});

/// Integrand for tanh-sinh: f(x, x - a, b - x), the last two accurate to full
/// relative precision even when x rounds to an endpoint.
using EndpointIntegrand = std::function<double(double, double, double)>;

struct TanhSinhOptions {
  double rel = 1e-13;
  int min_level = 3;
  int max_level = 10;
  /// Nodes closer than this to an endpoint (relative to half-width) are skipped.
  double min_distance = 1e-150;
};

/// tanh-sinh with step halving until consecutive levels agree to `rel`.
Estimate tanh_sinh(const EndpointIntegrand& f, double a, double b,
                   const TanhSinhOptions& opt = {});

/// tanh-sinh sum at a fixed step h = 2^-level (no convergence test).
double tanh_sinh_at_level(const EndpointIntegrand& f, double a, double b, int level,
                          double min_distance = 1e-150);

/// Geometric breakpoints a = x0 < ... < xn = b with ratio at most `ratio`
/// between consecutive points (a > 0).
std::vector<double> geometric_breakpoints(double a, double b, double ratio);

}  // namespace hardylab::quad
