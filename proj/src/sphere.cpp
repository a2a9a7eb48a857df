#include "hardylab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

double surface_measure(int N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "surface_measure requires N >= 1");
  return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

SphereQuadrature SphereQuadrature::make(int angular_nodes, double tolerance) {
  if (angular_nodes < 8) fail(ErrorCode::InvalidArgument, "angular_nodes >= 8 violated");
  if (!(tolerance > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance > 0 violated");
  return SphereQuadrature{angular_nodes, tolerance};
}

SphericalWeight SphericalWeight::constant(double c) {
  if (!std::isfinite(c) || c < 0.0) fail(ErrorCode::InvalidArgument, "constant weight needs finite c >= 0");
  SphericalWeight w;
  w.kind_ = Kind::Constant;
  w.param_ = c;
  return w;
}

SphericalWeight SphericalWeight::cap(double phi0) {
  if (!(phi0 > 0.0 && phi0 <= kPi + 1e-14)) {
    fail(ErrorCode::InvalidArgument, "cap angle must lie in (0, pi]");
  }
  SphericalWeight w;
  w.kind_ = Kind::CapIndicator;
  w.param_ = std::min(phi0, kPi);
  return w;
}

SphericalWeight SphericalWeight::zonal_power(double k) {
  if (!std::isfinite(k) || k < 0.0) fail(ErrorCode::InvalidArgument, "zonal power needs k >= 0");
  SphericalWeight w;
  w.kind_ = Kind::ZonalPower;
  w.param_ = k;
  return w;
}

SphericalWeight SphericalWeight::sampled(std::vector<double> angles, std::vector<double> values) {
  if (angles.size() != values.size() || angles.size() < 2) {
    fail(ErrorCode::InvalidArgument, "sampled weight needs >= 2 (angle, value) pairs");
  }
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!std::isfinite(angles[i]) || !std::isfinite(values[i])) {
      fail(ErrorCode::InvalidArgument, "sampled weight entries must be finite");
    }
    if (i > 0 && !(angles[i] > angles[i - 1])) {
      fail(ErrorCode::InvalidArgument, "sampled weight angles must be strictly increasing");
    }
  }
  if (std::abs(angles.front()) > 1e-12 || std::abs(angles.back() - kPi) > 1e-9) {
    fail(ErrorCode::InvalidArgument, "sampled weight grid must cover [0, pi]");
  }
  angles.front() = 0.0;
  angles.back() = kPi;
  SphericalWeight w;
  w.kind_ = Kind::SampledZonal;
  w.param_ = static_cast<double>(angles.size());
  w.nonneg_ = std::all_of(values.begin(), values.end(), [](double v) { return v >= 0.0; });
  w.angles_ = std::move(angles);
  w.values_ = std::move(values);
  return w;
}

SphericalWeight SphericalWeight::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open weight table '" + path + "'");
  std::vector<double> angles;
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double a = 0.0;
    double v = 0.0;
    if (!(fields >> a)) {
      if (fields.eof() && line.find_first_not_of(" \t\r") == std::string::npos) continue;
      if (first) {
        first = false;
        continue;
      }
      fail(ErrorCode::IoError, "malformed line in '" + path + "': " + line);
    }
    if (!(fields >> v)) fail(ErrorCode::IoError, "missing value column in '" + path + "'");
    first = false;
    angles.push_back(a);
    values.push_back(v);
  }
  return sampled(std::move(angles), std::move(values));
}

SphericalWeight SphericalWeight::scaled(double factor) const {
  if (!std::isfinite(factor)) fail(ErrorCode::InvalidArgument, "scale factor must be finite");
  SphericalWeight w = *this;
  w.amplitude_ *= factor;
  if (factor < 0.0) w.nonneg_ = false;
  if (factor < 0.0 && kind_ == Kind::SampledZonal) {
    w.nonneg_ = std::all_of(values_.begin(), values_.end(), [](double v) { return v <= 0.0; });
  }
  return w;
}

double SphericalWeight::operator()(double phi) const {
  double base = 0.0;
  switch (kind_) {
    case Kind::Constant:
      base = param_;
      break;
    case Kind::CapIndicator:
      base = phi <= param_ ? 1.0 : 0.0;
      break;
    case Kind::ZonalPower:
      base = std::pow(std::abs(std::cos(phi)), param_);
      break;
    case Kind::SampledZonal: {
      if (phi <= 0.0) {
        base = values_.front();
        break;
      }
      if (phi >= kPi) {
        base = values_.back();
        break;
      }
      const auto it = std::upper_bound(angles_.begin(), angles_.end(), phi);
      const std::size_t i = static_cast<std::size_t>(it - angles_.begin()) - 1;
      const double t = (phi - angles_[i]) / (angles_[i + 1] - angles_[i]);
      base = values_[i] + t * (values_[i + 1] - values_[i]);
      break;
    }
  }
  return amplitude_ * base;
}

std::vector<double> SphericalWeight::kinks() const {
  switch (kind_) {
    case Kind::Constant:
      return {};
    case Kind::CapIndicator:
      if (param_ < kPi) return {param_};
      return {};
    case Kind::ZonalPower:
      return {kPi / 2.0};
    case Kind::SampledZonal:
      return std::vector<double>(angles_.begin() + 1, angles_.end() - 1);
  }
  return {};
}

std::string SphericalWeight::name() const {
  std::string base;
  switch (kind_) {
    case Kind::Constant: base = "const(" + fmt(param_) + ")"; break;
    case Kind::CapIndicator: base = "cap(" + fmt(param_) + ")"; break;
    case Kind::ZonalPower: base = "zpow(" + fmt(param_) + ")"; break;
    case Kind::SampledZonal: base = "sampled(" + std::to_string(angles_.size()) + ")"; break;
  }
  if (amplitude_ != 1.0) return fmt(amplitude_) + "*" + base;
  return base;
}

namespace {

std::vector<double> angular_breakpoints(std::span<const double> kinks) {
  std::vector<double> bp{0.0};
  for (double k : kinks) {
    if (k > 0.0 && k < kPi) bp.push_back(k);
  }
  bp.push_back(kPi);
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  return bp;
}

}  // namespace

double integrate_zonal(const std::function<double(double)>& g,
                       std::span<const double> kinks, int N,
                       const SphereQuadrature& quad) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "integrate_zonal requires N >= 1");
  if (N == 1) return g(0.0) + g(kPi);
  const double power = N - 2.0;
  auto integrand = [&](double phi) {
    const double s = std::sin(phi);
    return power == 0.0 ? g(phi) : g(phi) * std::pow(s, power);
  };
  const auto bp = angular_breakpoints(kinks);
  quad::Tolerance tol;
  tol.rel = quad.tolerance;
  tol.abs = 1e-300;
  tol.max_intervals = 20000;
  const quad::Estimate est = quad::adaptive(integrand, bp, tol);
  if (!est.converged && est.error > 1e-8 * std::abs(est.value) + 1e-300) {
    fail(ErrorCode::QuadratureFailure,
         "zonal integral did not converge (error " + fmt(est.error) + ")");
  }
  return surface_measure(N - 1) * est.value;
}

double integrate_zonal(const SphericalWeight& g, int N, const SphereQuadrature& quad) {
  const auto k = g.kinks();
  return integrate_zonal([&g](double phi) { return g(phi); }, k, N, quad);
}

double lq_norm(const SphericalWeight& g, double q, int N, const SphereQuadrature& quad) {
  if (!(q >= 1.0) || !std::isfinite(q)) fail(ErrorCode::ExponentOutOfRange, "lq_norm needs finite q >= 1");
  const auto k = g.kinks();
  const double integral = integrate_zonal(
      [&g, q](double phi) { return std::pow(std::abs(g(phi)), q); }, k, N, quad);
  return std::pow(integral, 1.0 / q);
}

AngularRule angular_rule(int N, std::span<const double> kinks, int nodes_per_piece) {
  AngularRule rule;
  if (N < 1) fail(ErrorCode::InvalidArgument, "angular_rule requires N >= 1");
  if (N == 1) {
    rule.phi = {0.0, kPi};
    rule.weight = {1.0, 1.0};
    return rule;
  }
  const auto bp = angular_breakpoints(kinks);
  const quad::Rule& gl = quad::gauss_legendre(nodes_per_piece);
  const double lower = surface_measure(N - 1);
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double c = 0.5 * (bp[i] + bp[i + 1]);
    const double h = 0.5 * (bp[i + 1] - bp[i]);
    for (int j = 0; j < nodes_per_piece; ++j) {
      const double phi = c + h * gl.nodes[j];
      const double s = N == 2 ? 1.0 : std::pow(std::sin(phi), N - 2.0);
      rule.phi.push_back(phi);
      rule.weight.push_back(lower * h * gl.weights[j] * s);
    }
  }
  return rule;
}

double mu_gn(double beta, int N, double t) {
  if (N < 2) fail(ErrorCode::InvalidArgument, "mu_gn requires N >= 2");
  if (!std::isfinite(beta) || beta < 0.0) fail(ErrorCode::MuUndefined, "mu requires finite beta >= 0");
  if (!(t > 2.0) || std::isnan(t)) fail(ErrorCode::ExponentOutOfRange, "mu requires t > 2");
  if (N > 3) {
    const double critical = 2.0 * (N - 1.0) / (N - 3.0);
    if (std::abs(t - critical) <= 1e-12 * critical) {
      return std::min(beta, (N - 1.0) * (N - 3.0) / 4.0);
    }
    if (t > critical) {
      fail(ErrorCode::ExponentOutOfRange, "t above 2(N-1)/(N-3) (t=" + fmt(t) + ")");
    }
  } else if (!std::isfinite(t)) {
    fail(ErrorCode::ExponentOutOfRange, "t must be finite");
  }
  const double limit = (N - 1.0) / (t - 2.0);
  if (beta > limit) {
    fail(ErrorCode::MuUndefined, "mu is only known on [0, (N-1)/(t-2)] = [0, " + fmt(limit) + "]");
  }
  return beta;
}

}  // namespace hardylab
