#include "hardylab/fractional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "hardylab/error.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

constexpr double kSeriesRadius = 0.5;

double kernel_exponent(const FracRegime& frac) { return 0.5 * (frac.N + frac.sp()); }

}  // namespace

namespace detail {

double psi_series(const FracRegime& frac, double r) {
  if (!(r >= 0.0 && r <= 0.75)) fail(ErrorCode::InvalidArgument, "series needs 0 <= r <= 0.75");
  const double a = kernel_exponent(frac);
  const double b = 0.5 * frac.sp() + 1.0;
  const double c = 0.5 * frac.N;
  const double z = r * r;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 2000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
    sum += term;
    if (term <= 1e-18 * sum) break;
  }
  return surface_measure(frac.N) * sum;
}

double psi_scaled_quadrature(const FracRegime& frac, double w) {
  if (frac.N < 2) fail(ErrorCode::InvalidArgument, "angle quadrature needs N >= 2");
  if (!(w > 0.0 && w <= 0.75)) fail(ErrorCode::InvalidArgument, "scaled kernel needs 0 < w <= 0.75");
  const int N = frac.N;
  const double sp = frac.sp();
  const double a = kernel_exponent(frac);
  const double r = 1.0 - w;
  const double root = 2.0 * std::sqrt(r);
  const double outer = surface_measure(N - 1);

  // In u = theta / w the kernel is (sin(w u)/w)^{N-2} (1 + x^2)^{-a} with
  // x = 2 sqrt(r) sin(w u / 2) / w, so the peak sits at u ~ 1 for every w.
  auto integrand = [&](double u) {
    const double theta = w * u;
    const double x = root * std::sin(0.5 * theta) / w;
    double value = std::exp(-a * std::log1p(x * x));
    if (N > 2) value *= std::pow(std::sin(theta) / w, N - 2);
    return value;
  };

  // x >= 0.45 u on the whole range (sin(t/2) >= t/pi, r >= 1/4), which bounds
  // the tail beyond U by outer * 0.45^{-2a} U^{-(1+sp)} / (1+sp).
  const double u_end = std::numbers::pi / w;
  const double floor = 0.5 * psi_scaled_limit(frac) * 1e-17;
  const double u_stop =
      std::pow(outer * std::pow(0.45, -2.0 * a) / ((1.0 + sp) * floor), 1.0 / (1.0 + sp));
  const double upper = std::min(u_end, u_stop);

  std::vector<double> bp{0.0};
  for (double u = 0.5; u < upper; u *= 2.0) bp.push_back(u);
  bp.push_back(upper);

  quad::Tolerance tol;
  tol.rel = 2e-15;
  tol.abs = 0.0;
  tol.max_intervals = 8000;
  const quad::Estimate est = quad::adaptive(integrand, bp, tol);
  if (!est.converged && est.error > 1e-11 * std::abs(est.value)) {
    std::ostringstream os;
    os << "kernel quadrature did not converge at w = " << w;
    fail(ErrorCode::QuadratureFailure, os.str());
  }
  return outer * est.value;
}

}  // namespace detail

double psi_scaled_limit(const FracRegime& frac) {
  if (frac.N == 1) return 1.0;
  const double sp = frac.sp();
  const double a = kernel_exponent(frac);
  // |S^{N-2}| int_0^inf u^{N-2} (1+u^2)^{-a} du.
  const double beta = std::exp(std::lgamma(0.5 * (frac.N - 1)) + std::lgamma(0.5 * (1.0 + sp)) -
                               std::lgamma(a));
  return surface_measure(frac.N - 1) * 0.5 * beta;
}

double psi_scaled(const FracRegime& frac, double w) {
  if (!(w > 0.0 && w <= 1.0)) fail(ErrorCode::KernelSingularity, "scaled kernel needs 0 < w <= 1");
  const double e = 1.0 + frac.sp();
  if (frac.N == 1) return 1.0 + std::pow(w / (2.0 - w), e);
  if (w >= 1.0 - kSeriesRadius) return detail::psi_series(frac, 1.0 - w) * std::pow(w, e);
  return detail::psi_scaled_quadrature(frac, w);
}

double psi(const FracRegime& frac, double r) {
  if (!std::isfinite(r) || r < 0.0) fail(ErrorCode::InvalidArgument, "kernel needs r >= 0");
  if (r >= 1.0) fail(ErrorCode::KernelSingularity, "kernel diverges at r = 1");
  const double e = 1.0 + frac.sp();
  if (frac.N == 1) return std::pow(1.0 - r, -e) + std::pow(1.0 + r, -e);
  if (r <= kSeriesRadius) return detail::psi_series(frac, r);
  const double w = 1.0 - r;
  return detail::psi_scaled_quadrature(frac, w) / std::pow(w, e);
}

std::string_view scheme_name(LambdaScheme scheme) {
  return scheme == LambdaScheme::GradedGauss ? "graded-gauss" : "tanh-sinh";
}

std::optional<LambdaScheme> parse_scheme(std::string_view name) {
  if (name == "graded-gauss") return LambdaScheme::GradedGauss;
  if (name == "tanh-sinh") return LambdaScheme::TanhSinh;
  return std::nullopt;
}

namespace {

// Outer integrand with r and w = 1 - r both supplied to full precision.
double lambda_integrand_rw(const FracRegime& frac, double r, double w) {
  const double sp = frac.sp();
  const double p = frac.p;
  const double e = (frac.N - sp) / p;
  if (w >= 1.0 - kSeriesRadius) {
    const double d = -std::expm1(e * std::log(r));
    return std::pow(r, sp - 1.0) * std::pow(d, p) * psi(frac, r);
  }
  const double d = -std::expm1(e * std::log1p(-w));
  return std::pow(r, sp - 1.0) * std::pow(d / w, p) * std::pow(w, p - 1.0 - sp) *
         psi_scaled(frac, w);
}

int depth_for(double exponent) {
  // Innermost panel of width 10^{-16/exponent}, so it carries a relative
  // share of about 1e-16 of a unit-order integral.
  const double d = 16.0 * std::log2(10.0) / exponent;
  return std::clamp(static_cast<int>(std::ceil(d)), 8, 900);
}

double graded_gauss_integral(const FracRegime& frac, int n) {
  const double sp = frac.sp();
  const double p = frac.p;
  const double half[1] = {0.5};
  const RadialRule left = fixed_radial_rule(half, sp - 1.0, n, 4.0, depth_for(sp));
  const RadialRule right = fixed_radial_rule(half, p - 1.0 - sp, n, 4.0, depth_for(p - sp));
  double sum = 0.0;
  for (std::size_t i = 0; i < left.nodes.size(); ++i) {
    const double r = left.nodes[i];
    sum += left.weights[i] * lambda_integrand_rw(frac, r, 1.0 - r);
  }
  for (std::size_t i = 0; i < right.nodes.size(); ++i) {
    const double w = right.nodes[i];
    sum += right.weights[i] * lambda_integrand_rw(frac, 1.0 - w, w);
  }
  return sum;
}

}  // namespace

double lambda_integrand(const FracRegime& frac, double r) {
  if (!(r > 0.0 && r < 1.0)) fail(ErrorCode::InvalidArgument, "integrand needs 0 < r < 1");
  return lambda_integrand_rw(frac, r, 1.0 - r);
}

LambdaResult lambda_constant(const FracRegime& frac, LambdaScheme scheme, int refine) {
  const FracRegime checked = FracRegime::make(frac.N, frac.s, frac.p);
  if (refine < 0 || refine > 4) fail(ErrorCode::InvalidArgument, "refine must be in [0, 4]");
  LambdaResult res;
  res.frac = checked;
  res.scheme = scheme;
  double integral = 0.0;
  double error = 0.0;
  if (scheme == LambdaScheme::GradedGauss) {
    const int n = 16 << refine;
    integral = graded_gauss_integral(checked, n);
    error = std::abs(graded_gauss_integral(checked, 2 * n) - integral);
  } else {
    quad::TanhSinhOptions opt;
    opt.rel = 1e-14;
    opt.min_level = 4;
    opt.max_level = 10;
    auto left = [&](double, double from_a, double) {
      return lambda_integrand_rw(checked, from_a, 1.0 - from_a);
    };
    auto right = [&](double, double, double to_b) {
      return lambda_integrand_rw(checked, 1.0 - to_b, to_b);
    };
    const quad::Estimate l = quad::tanh_sinh(left, 0.0, 0.5, opt);
    const quad::Estimate r = quad::tanh_sinh(right, 0.5, 1.0, opt);
    if (!l.converged || !r.converged) {
      if (l.error + r.error > 1e-10 * std::abs(l.value + r.value)) {
        fail(ErrorCode::QuadratureFailure, "tanh-sinh did not converge for the constant");
      }
    }
    if (refine == 0) {
      integral = l.value + r.value;
      error = l.error + r.error;
    } else {
      const double lr = quad::tanh_sinh_at_level(left, 0.0, 0.5, l.level + refine, opt.min_distance);
      const double rr = quad::tanh_sinh_at_level(right, 0.5, 1.0, r.level + refine, opt.min_distance);
      integral = lr + rr;
      error = std::abs(integral - (l.value + r.value));
    }
  }
  if (!(std::isfinite(integral) && integral > 0.0)) {
    fail(ErrorCode::QuadratureFailure, "constant integral is not positive and finite");
  }
  res.inverse_integral = integral;
  res.lambda = 1.0 / (2.0 * integral);
  res.est_error = res.lambda * error / integral;
  return res;
}

LambdaCrossCheck lambda_cross_validated(const FracRegime& frac) {
  LambdaCrossCheck out;
  out.graded = lambda_constant(frac, LambdaScheme::GradedGauss);
  out.tanh_sinh = lambda_constant(frac, LambdaScheme::TanhSinh);
  out.lambda = out.graded.lambda;
  const double diff = std::abs(out.graded.lambda - out.tanh_sinh.lambda);
  out.rel_diff = diff / out.graded.lambda;
  out.est_error = std::max({out.graded.est_error, out.tanh_sinh.est_error, diff});
  if (out.rel_diff > 1e-6) {
    std::ostringstream os;
    os.precision(17);
    os << "schemes disagree: graded-gauss " << out.graded.lambda << ", tanh-sinh "
       << out.tanh_sinh.lambda;
    fail(ErrorCode::QuadratureInconsistent, os.str());
  }
  return out;
}

namespace {

struct KernelGrid {
  std::vector<double> mesh;    // panel edges in w
  std::vector<double> w;       // kernel_nodes per panel, panel-major
  std::vector<double> weight;  // Gauss weight * (1-w)^{N-1} Psi(1-w)
};

double kernel_weight(const FracRegime& frac, double w) {
  return std::pow(1.0 - w, frac.N - 1) * psi_scaled(frac, w) / std::pow(w, 1.0 + frac.sp());
}

// Panels in w: doubling from eta up to 1/uniform_panels, uniform above.
std::vector<double> kernel_mesh(double eta, const SeminormOptions& opt) {
  const double switch_w = 1.0 / opt.uniform_panels;
  std::vector<double> mesh;
  if (eta < switch_w) mesh = quad::geometric_breakpoints(eta, switch_w, 2.0);
  else mesh.push_back(eta);
  for (int k = 2; k <= opt.uniform_panels; ++k) mesh.push_back(k * switch_w);
  mesh.back() = 1.0;
  return mesh;
}

KernelGrid kernel_grid(const FracRegime& frac, const std::vector<double>& mesh, const SeminormOptions& opt) {
  const quad::Rule& gl = quad::gauss_legendre(opt.kernel_nodes);
  KernelGrid grid;
  grid.mesh = mesh;
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) {
    const double half = 0.5 * (mesh[i + 1] - mesh[i]);
    const double mid = 0.5 * (mesh[i + 1] + mesh[i]);
    for (int k = 0; k < opt.kernel_nodes; ++k) {
      const double w = mid + half * gl.nodes[k];
      grid.w.push_back(w);
      grid.weight.push_back(half * gl.weights[k] * kernel_weight(frac, w));
    }
  }
  return grid;
}

// f(R) - f((1-w) R), using the derivative where the subtraction would round.
double radial_difference(const RadialProfile& f, double R, double w) {
  if (w < 1e-6) return f.derivative(R * (1.0 - 0.5 * w)) * w * R;
  return f.value(R) - f.value(R * (1.0 - w));
}

}  // namespace

SeminormResult frac_seminorm_radial_detailed(const RadialProfile& f, const FracRegime& frac,
                                             const SeminormOptions& opt) {
  if (!f.compact()) fail(ErrorCode::SupportRequired, "seminorm needs a compactly supported profile");
  if (opt.radial_nodes < 4 || opt.kernel_nodes < 4 || opt.uniform_panels < 4 ||
      !(opt.tolerance > 0.0)) {
    fail(ErrorCode::InvalidArgument, "invalid seminorm options");
  }
  const int N = frac.N;
  const double p = frac.p;
  const double sp = frac.sp();
  const double sphere = surface_measure(N);
  const double R_s = f.support();
  const double R_c = 2.0 * R_s;

  std::vector<double> bp = f.breakpoints();
  bp.push_back(R_c);
  const RadialRule outer =
      fixed_radial_rule(bp, N - 1.0 - sp, opt.radial_nodes, 2.0, 20, opt.kink_depth);

  // Far field: larger radius beyond R_c, only the smaller one in the support.
  const std::vector<double> support_bp = f.breakpoints();
  const RadialRule inner_m = fixed_radial_rule(support_bp, N - 1.0, opt.radial_nodes);
  std::vector<double> mass(inner_m.nodes.size());
  for (std::size_t i = 0; i < mass.size(); ++i) {
    const double m = inner_m.nodes[i];
    mass[i] = inner_m.weights[i] * std::pow(std::abs(f.value(m)), p) * std::pow(m, N - 1.0);
  }
  const double one[1] = {1.0};
  const RadialRule vrule = fixed_radial_rule(one, 0.0, opt.radial_nodes, 2.0, 30);
  double far = 0.0;
  for (std::size_t k = 0; k < vrule.nodes.size(); ++k) {
    const double tau = std::pow(vrule.nodes[k], 1.0 / sp);
    double J = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      if (mass[i] == 0.0) continue;
      J += mass[i] * detail::psi_series(frac, inner_m.nodes[i] * tau / R_c);
    }
    far += vrule.weights[k] * J;
  }
  far *= std::pow(R_c, -sp) / sp;

  const double lip = f.lipschitz();
  const double band_scale = 2.0 * sphere * std::pow(lip, p) * std::pow(R_c, N - sp + p) /
                            (N - sp + p) / (p - sp);
  auto band_bound = [&](double eta) {
    const double K = 1.1 * std::max(psi_scaled(frac, eta), psi_scaled_limit(frac));
    return band_scale * K * std::pow(eta, p - sp);
  };

  // The inner integrand has a kink wherever (1-w) R crosses a profile
  // breakpoint; the kernel panel holding it is redone in two pieces. The
  // kernel is smooth on each panel, so it is interpolated from the panel's
  // own Gauss values rather than re-evaluated.
  const quad::Rule& gl = quad::gauss_legendre(opt.kernel_nodes);
  const std::size_t nk = static_cast<std::size_t>(opt.kernel_nodes);
  std::vector<double> bary(nk, 1.0);
  for (std::size_t j = 0; j < nk; ++j) {
    for (std::size_t k = 0; k < nk; ++k) {
      if (k != j) bary[j] /= gl.nodes[j] - gl.nodes[k];
    }
  }
  // Kernel at reference point t in [-1, 1] of a panel whose node values are `kern`.
  auto interpolate = [&](const double* kern, double t) {
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < nk; ++j) {
      const double dt = t - gl.nodes[j];
      if (dt == 0.0) return kern[j];
      const double c = bary[j] / dt;
      num += c * kern[j];
      den += c;
    }
    return num / den;
  };
  auto split_panel = [&](const double* kern, double R, double lo, double hi, double wk) {
    double acc = 0.0;
    for (auto [a, b] : {std::pair{lo, wk}, std::pair{wk, hi}}) {
      const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
      for (std::size_t k = 0; k < nk; ++k) {
        const double w = mid + half * gl.nodes[k];
        const double d = radial_difference(f, R, w);
        if (d == 0.0) continue;
        const double t = (2.0 * w - lo - hi) / (hi - lo);
        acc += half * gl.weights[k] * interpolate(kern, t) * std::pow(std::abs(d), p);
      }
    }
    return acc;
  };
  // Near part restricted to the w-panels of `mesh`.
  auto near_part = [&](const std::vector<double>& mesh) {
    const KernelGrid grid = kernel_grid(frac, mesh, opt);
    std::vector<double> panel(grid.mesh.size() - 1);
    std::vector<double> kern(grid.w.size());
    for (std::size_t j = 0; j < grid.w.size(); ++j) kern[j] = kernel_weight(frac, grid.w[j]);
    double sum = 0.0;
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
      const double R = outer.nodes[i];
      std::fill(panel.begin(), panel.end(), 0.0);
      for (std::size_t j = 0; j < grid.w.size(); ++j) {
        const double d = radial_difference(f, R, grid.w[j]);
        if (d != 0.0) panel[j / nk] += grid.weight[j] * std::pow(std::abs(d), p);
      }
      for (double b : support_bp) {
        if (b >= R) break;
        const double wk = 1.0 - b / R;
        const auto it = std::upper_bound(grid.mesh.begin(), grid.mesh.end(), wk);
        if (it == grid.mesh.begin() || it == grid.mesh.end()) continue;
        const double lo = *(it - 1), hi = *it;
        if (wk - lo <= 1e-12 * (hi - lo) || hi - wk <= 1e-12 * (hi - lo)) continue;
        const std::size_t k = static_cast<std::size_t>(it - grid.mesh.begin()) - 1;
        panel[k] = split_panel(&kern[k * nk], R, lo, hi, wk);
      }
      double inner = 0.0;
      for (double v : panel) inner += v;
      sum += outer.weights[i] * std::pow(R, N - 1.0 - sp) * inner;
    }
    return sum;
  };

  SeminormResult res;
  // Shrinking the band only adds doubling panels below the old one.
  double eta = std::ldexp(1.0, -30);
  double near = near_part(kernel_mesh(eta, opt));
  for (int iter = 0; iter < 8; ++iter) {
    const double value = 2.0 * sphere * (near + far);
    const double bound = band_bound(eta);
    res.near = 2.0 * sphere * near;
    res.far = 2.0 * sphere * far;
    res.value = value;
    res.band_bound = bound;
    res.band_width = eta;
    if (value == 0.0 || bound <= 0.1 * opt.tolerance * value) return res;
    // Next band: the largest power of two meeting the target if the bound
    // scales like eta^{p-sp}.
    const double target = 0.1 * opt.tolerance * value;
    const double guess = eta * std::pow(target / bound, 1.0 / (p - sp));
    double next = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(guess))));
    if (next >= eta) next = 0.5 * eta;
    if (next < 1e-280) break;
    near += near_part(quad::geometric_breakpoints(next, eta, 2.0));
    eta = next;
  }
  std::ostringstream os;
  os << "diagonal band bound " << res.band_bound << " did not drop below target";
  fail(ErrorCode::QuadratureFailure, os.str());
}

double frac_seminorm_radial(const RadialProfile& f, const FracRegime& frac,
                            const SeminormOptions& opt) {
  return frac_seminorm_radial_detailed(f, frac, opt).value;
}

double frac_lhs_radial(const RadialProfile& f, const SphericalWeight& g, const FracRegime& frac,
                       const SphereQuadrature& quad, const RadialQuadrature& rq) {
  if (!g.nonneg()) fail(ErrorCode::NonnegRequired, "fractional inequality needs g >= 0");
  if (!f.compact()) fail(ErrorCode::SupportRequired, "profile must be compactly supported");
  const double p = frac.p;
  const double power = frac.N - frac.sp() - 1.0;
  const double angular = integrate_zonal(g, frac.N, quad);
  const std::vector<double> bp = f.breakpoints();
  const double radial = integrate_radial(
      [&](double r) { return std::pow(std::abs(f.value(r)), p) * std::pow(r, power); }, bp, power,
      rq);
  return angular * radial;
}

}  // namespace hardylab
