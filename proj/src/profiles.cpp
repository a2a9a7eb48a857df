#include "hardylab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(8);
  os << x;
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace

RadialProfile RadialProfile::tent(double R) {
  require(std::isfinite(R) && R > 0.0, "tent radius must be > 0");
  RadialProfile f;
  f.kind_ = Kind::Tent;
  f.params_ = {R};
  return f;
}

RadialProfile RadialProfile::truncated_power(double a, double r0, double R, double w) {
  require(std::isfinite(a), "truncated power exponent must be finite");
  require(std::isfinite(r0) && std::isfinite(R) && r0 > 0.0 && R > r0,
          "truncated power needs 0 < r0 < R");
  require(std::isfinite(w) && w > 0.0, "truncated power ramp width must be > 0");
  RadialProfile f;
  f.kind_ = Kind::TruncatedPower;
  f.params_ = {a, r0, R, w};
  return f;
}

RadialProfile RadialProfile::exp_bump(double scale, double R) {
  require(std::isfinite(scale) && scale > 0.0, "exp bump scale must be > 0");
  require(std::isfinite(R) && R > 0.0, "exp bump truncation must be > 0");
  RadialProfile f;
  f.kind_ = Kind::ExpBump;
  f.params_ = {scale, R};
  return f;
}

RadialProfile RadialProfile::sampled(std::vector<double> r, std::vector<double> v) {
  require(r.size() == v.size() && r.size() >= 2, "sampled profile needs >= 2 nodes");
  for (std::size_t i = 0; i < r.size(); ++i) {
    require(std::isfinite(r[i]) && std::isfinite(v[i]), "sampled profile entries must be finite");
    require(r[i] > 0.0, "sampled profile radii must be > 0");
    if (i > 0) require(r[i] > r[i - 1], "sampled profile radii must be strictly increasing");
  }
  RadialProfile f;
  f.kind_ = Kind::Sampled;
  f.r_ = std::move(r);
  f.v_ = std::move(v);
  return f;
}

RadialProfile RadialProfile::log_sampled(const std::function<double(double)>& fn,
                                         double r_min, double r_max, int n) {
  require(r_min > 0.0 && r_max > r_min && n >= 2, "log_sampled needs 0 < r_min < r_max, n >= 2");
  std::vector<double> r(n);
  std::vector<double> v(n);
  const double step = std::log(r_max / r_min) / (n - 1);
  for (int i = 0; i < n; ++i) {
    r[i] = i == n - 1 ? r_max : r_min * std::exp(step * i);
    v[i] = fn(r[i]);
  }
  return sampled(std::move(r), std::move(v));
}

RadialProfile RadialProfile::scaled(double c) const {
  require(std::isfinite(c), "scale must be finite");
  RadialProfile f = *this;
  f.amplitude_ *= c;
  return f;
}

RadialProfile RadialProfile::dilated(double lambda) const {
  require(std::isfinite(lambda) && lambda > 0.0, "dilation must be > 0");
  RadialProfile f = *this;
  f.dilation_ *= lambda;
  return f;
}

double RadialProfile::base_value(double x) const {
  switch (kind_) {
    case Kind::Tent:
      return x < params_[0] ? 1.0 - x / params_[0] : 0.0;
    case Kind::TruncatedPower: {
      const double a = params_[0], r0 = params_[1], R = params_[2], w = params_[3];
      if (x <= r0) return std::pow(r0 / R, a);
      if (x <= R) return std::pow(x / R, a);
      const double t = std::log(x / R) / w;
      return t < 1.0 ? std::pow(x / R, a) * (1.0 - t) : 0.0;
    }
    case Kind::ExpBump: {
      const double s = params_[0], R = params_[1];
      return x < R ? std::exp(-x / s) - std::exp(-R / s) : 0.0;
    }
    case Kind::Sampled: {
      if (x <= r_.front()) return v_.front();
      if (x >= r_.back()) return 0.0;
      const auto it = std::upper_bound(r_.begin(), r_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
      const double t = (x - r_[i]) / (r_[i + 1] - r_[i]);
      return v_[i] + t * (v_[i + 1] - v_[i]);
    }
  }
  return 0.0;
}

double RadialProfile::base_derivative(double x) const {
  switch (kind_) {
    case Kind::Tent:
      return x < params_[0] ? -1.0 / params_[0] : 0.0;
    case Kind::TruncatedPower: {
      const double a = params_[0], r0 = params_[1], R = params_[2], w = params_[3];
      if (x < r0) return 0.0;
      if (x < R) return a * std::pow(x / R, a) / x;
      if (x >= R * std::exp(w)) return 0.0;
      const double t = std::log(x / R) / w;
      return std::pow(x / R, a) * (a * (1.0 - t) - 1.0 / w) / x;
    }
    case Kind::ExpBump: {
      const double s = params_[0], R = params_[1];
      return x < R ? -std::exp(-x / s) / s : 0.0;
    }
    case Kind::Sampled: {
      if (x < r_.front() || x >= r_.back()) return 0.0;
      const auto it = std::upper_bound(r_.begin(), r_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
      return (v_[i + 1] - v_[i]) / (r_[i + 1] - r_[i]);
    }
  }
  return 0.0;
}

std::vector<double> RadialProfile::base_breakpoints() const {
  switch (kind_) {
    case Kind::Tent: return {params_[0]};
    case Kind::TruncatedPower: return {params_[1], params_[2], params_[2] * std::exp(params_[3])};
    case Kind::ExpBump: return {params_[1]};
    case Kind::Sampled: return r_;
  }
  return {};
}

double RadialProfile::base_lipschitz() const {
  switch (kind_) {
    case Kind::Tent: return 1.0 / params_[0];
    case Kind::TruncatedPower: {
      const double a = params_[0], r0 = params_[1], R = params_[2], w = params_[3];
      // |a| (x/R)^a / x is monotone on [r0, R]; check both ends. On the taper
      // |f'| <= (|a| + 1/w) (x/R)^{a-1} / R.
      const double at_r0 = std::abs(a) * std::pow(r0 / R, a) / r0;
      const double at_R = std::abs(a) / R;
      const double taper = (std::abs(a) + 1.0 / w) / R * std::max(1.0, std::exp(w * (a - 1.0)));
      return std::max({at_r0, at_R, taper});
    }
    case Kind::ExpBump: return 1.0 / params_[0];
    case Kind::Sampled: {
      double lip = 0.0;
      for (std::size_t i = 0; i + 1 < r_.size(); ++i) {
        lip = std::max(lip, std::abs((v_[i + 1] - v_[i]) / (r_[i + 1] - r_[i])));
      }
      return lip;
    }
  }
  return 0.0;
}

double RadialProfile::value(double r) const { return amplitude_ * base_value(dilation_ * r); }

double RadialProfile::derivative(double r) const {
  return amplitude_ * dilation_ * base_derivative(dilation_ * r);
}

std::vector<double> RadialProfile::breakpoints() const {
  auto bp = base_breakpoints();
  for (double& b : bp) b /= dilation_;
  return bp;
}

double RadialProfile::support() const { return breakpoints().back(); }

bool RadialProfile::compact() const { return kind_ != Kind::Sampled || v_.back() == 0.0; }

double RadialProfile::lipschitz() const {
  return std::abs(amplitude_) * dilation_ * base_lipschitz();
}

std::string RadialProfile::name() const {
  std::string base;
  switch (kind_) {
    case Kind::Tent: base = "tent(" + fmt(params_[0]) + ")"; break;
    case Kind::TruncatedPower:
      base = "tpow(" + fmt(params_[0]) + "," + fmt(params_[1]) + "," + fmt(params_[2]) + "," +
             fmt(params_[3]) + ")";
      break;
    case Kind::ExpBump: base = "expbump(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")"; break;
    case Kind::Sampled: base = "sampled(" + std::to_string(r_.size()) + ")"; break;
  }
  if (dilation_ != 1.0) base += "@x" + fmt(dilation_);
  if (amplitude_ != 1.0) base = fmt(amplitude_) + "*" + base;
  return base;
}

AngularFactor AngularFactor::one() { return AngularFactor{}; }

AngularFactor AngularFactor::cos() {
  AngularFactor h;
  h.kind_ = Kind::Cos;
  return h;
}

AngularFactor AngularFactor::cap_smooth(double phi0, double ramp) {
  require(std::isfinite(phi0) && std::isfinite(ramp) && phi0 >= 0.0 && ramp > 0.0 &&
              phi0 + ramp <= std::numbers::pi + 1e-12,
          "cap_smooth needs phi0 >= 0, ramp > 0, phi0 + ramp <= pi");
  AngularFactor h;
  h.kind_ = Kind::CapSmooth;
  h.phi0_ = phi0;
  h.ramp_ = ramp;
  return h;
}

double AngularFactor::value(double phi) const {
  switch (kind_) {
    case Kind::One: return 1.0;
    case Kind::Cos: return std::cos(phi);
    case Kind::CapSmooth:
      if (phi <= phi0_) return 1.0;
      if (phi >= phi0_ + ramp_) return 0.0;
      return 1.0 - (phi - phi0_) / ramp_;
  }
  return 0.0;
}

double AngularFactor::derivative(double phi) const {
  switch (kind_) {
    case Kind::One: return 0.0;
    case Kind::Cos: return -std::sin(phi);
    case Kind::CapSmooth:
      return (phi > phi0_ && phi < phi0_ + ramp_) ? -1.0 / ramp_ : 0.0;
  }
  return 0.0;
}

std::vector<double> AngularFactor::kinks() const {
  if (kind_ == Kind::CapSmooth) return {phi0_, phi0_ + ramp_};
  if (kind_ == Kind::Cos) return {0.5 * std::numbers::pi};  // |h|^p kinks at the zero
  return {};
}

std::string AngularFactor::name() const {
  switch (kind_) {
    case Kind::One: return "one";
    case Kind::Cos: return "cos";
    case Kind::CapSmooth: return "capsmooth(" + fmt(phi0_) + "," + fmt(ramp_) + ")";
  }
  return "?";
}

std::string TestFunction::name() const { return radial.name() + "x" + angular.name(); }

RadialQuadrature RadialQuadrature::make(double tolerance, double max_ratio) {
  require(tolerance > 0.0, "radial tolerance must be > 0");
  require(max_ratio > 1.0, "radial grading ratio must be > 1");
  return RadialQuadrature{tolerance, max_ratio};
}

double integrate_radial(const std::function<double(double)>& G,
                        std::span<const double> breakpoints, double gamma,
                        const RadialQuadrature& rq) {
  if (breakpoints.empty()) return 0.0;
  if (!(gamma > -1.0)) fail(ErrorCode::RegimeViolation, "radial integrand not integrable at 0");
  std::vector<double> bp(breakpoints.begin(), breakpoints.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  quad::Tolerance tol;
  tol.rel = rq.tolerance;
  tol.abs = 1e-300;
  tol.max_intervals = 20000;

  const double b0 = bp.front();
  const double m = 1.0 / (gamma + 1.0);
  auto inner = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double r = b0 * std::pow(v, m);
    return G(r) * b0 * m * std::pow(v, m - 1.0);
  };
  const double inner_bp[5] = {0.0, 0.125, 0.25, 0.5, 1.0};
  const quad::Estimate head = quad::adaptive(inner, std::span<const double>(inner_bp, 5), tol);

  std::vector<double> mesh{b0};
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const auto seg = quad::geometric_breakpoints(bp[i], bp[i + 1], rq.max_ratio);
    mesh.insert(mesh.end(), seg.begin() + 1, seg.end());
  }
  quad::Estimate body;
  if (mesh.size() >= 2) body = quad::adaptive(G, mesh, tol);

  const double value = head.value + body.value;
  const double err = head.error + body.error;
  if ((!head.converged || !body.converged) && err > 1e-6 * std::abs(value) + 1e-300) {
    std::ostringstream os;
    os << "radial integral did not converge (error " << err << ", value " << value << ")";
    fail(ErrorCode::QuadratureFailure, os.str());
  }
  return value;
}

RadialRule fixed_radial_rule(std::span<const double> breakpoints, double gamma, int n,
                             double ratio, int depth, int kink_depth) {
  if (breakpoints.empty()) return {};
  if (!(gamma > -1.0)) fail(ErrorCode::RegimeViolation, "radial integrand not integrable at 0");
  std::vector<double> bp(breakpoints.begin(), breakpoints.end());
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

  const quad::Rule& gl = quad::gauss_legendre(n);
  RadialRule rule;
  auto add_panel = [&](double a, double b) {
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < n; ++i) {
      rule.nodes.push_back(mid + half * gl.nodes[i]);
      rule.weights.push_back(half * gl.weights[i]);
    }
  };
  // Innermost panel [0, e]: r = e v^m with m = 1/(gamma+1).
  const double e = std::ldexp(bp.front(), -depth);
  const double m = 1.0 / (gamma + 1.0);
  for (int i = 0; i < n; ++i) {
    const double v = 0.5 * (1.0 + gl.nodes[i]);
    rule.nodes.push_back(e * std::pow(v, m));
    rule.weights.push_back(0.5 * gl.weights[i] * e * m * std::pow(v, m - 1.0));
  }
  std::vector<double> mesh = quad::geometric_breakpoints(e, bp.front(), ratio);
  for (int k = 2; k <= kink_depth; ++k) mesh.push_back(bp.front() * (1.0 - std::ldexp(1.0, -k)));
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double a = bp[i], b = bp[i + 1];
    const auto seg = quad::geometric_breakpoints(a, b, ratio);
    mesh.insert(mesh.end(), seg.begin() + 1, seg.end());
    for (int k = 2; k <= kink_depth; ++k) {
      const double h = std::ldexp(b - a, -k);
      mesh.push_back(a + h);
      mesh.push_back(b - h);
    }
  }
  std::sort(mesh.begin(), mesh.end());
  mesh.erase(std::unique(mesh.begin(), mesh.end()), mesh.end());
  for (std::size_t i = 0; i + 1 < mesh.size(); ++i) add_panel(mesh[i], mesh[i + 1]);
  return rule;
}

}  // namespace hardylab
