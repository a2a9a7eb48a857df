#include "hardylab/quotients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab {

namespace {

std::vector<double> merged_kinks(const SphericalWeight& g, const AngularFactor& h) {
  std::vector<double> k = g.kinks();
  const std::vector<double> hk = h.kinks();
  k.insert(k.end(), hk.begin(), hk.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

void require_compact(const RadialProfile& f) {
  if (!f.compact()) fail(ErrorCode::SupportRequired, "test profile must be compactly supported");
}

double radial_moment(const RadialProfile& f, double p, double power, const RadialQuadrature& rq) {
  const std::vector<double> bp = f.breakpoints();
  return integrate_radial(
      [&](double r) {
        const double v = f.value(r);
        return v == 0.0 ? 0.0 : std::pow(std::abs(v), p) * std::pow(r, power);
      },
      bp, power, rq);
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

}  // namespace

double lhs_weighted(const TestFunction& u, const SphericalWeight& g, const Regime& regime,
                    const QuotientOptions& opt) {
  const Regime r = Regime::local(regime.N, regime.p, regime.alpha);
  require_compact(u.radial);
  const double p = r.p;
  const std::vector<double> kinks = merged_kinks(g, u.angular);
  const double angular = integrate_zonal(
      [&](double phi) { return g(phi) * std::pow(std::abs(u.angular.value(phi)), p); }, kinks, r.N,
      opt.sphere);
  return angular * radial_moment(u.radial, p, r.gap() - 1.0, opt.radial);
}

double weighted_moment(const TestFunction& u, double p, double degree, int N,
                       const QuotientOptions& opt) {
  if (!(N > degree)) fail(ErrorCode::RegimeViolation, "N > degree violated");
  require_compact(u.radial);
  const std::vector<double> kinks = u.angular.kinks();
  const double angular = integrate_zonal(
      [&](double phi) { return std::pow(std::abs(u.angular.value(phi)), p); }, kinks, N,
      opt.sphere);
  return angular * radial_moment(u.radial, p, N - degree - 1.0, opt.radial);
}

double gradient_energy(const TestFunction& u, const Regime& regime, const QuotientOptions& opt) {
  const Regime reg = Regime::local(regime.N, regime.p, regime.alpha);
  require_compact(u.radial);
  const int N = reg.N;
  const double p = reg.p;
  const double power = N - reg.alpha - 1.0;
  const AngularRule rule = angular_rule(N, u.angular.kinks(), opt.sphere.angular_nodes);
  std::vector<double> h(rule.phi.size()), dh(rule.phi.size());
  bool tangential = false;
  for (std::size_t j = 0; j < rule.phi.size(); ++j) {
    h[j] = u.angular.value(rule.phi[j]);
    dh[j] = N >= 2 ? u.angular.derivative(rule.phi[j]) : 0.0;
    tangential = tangential || dh[j] != 0.0;
  }
  const RadialProfile& f = u.radial;
  const std::vector<double> bp = f.breakpoints();
  if (tangential && p != 2.0) {
    // Not separable: near each zero of h the angular integrand has a cusp of
    // width ~ |f / (r f')|, which a fixed rule cannot follow.
    std::vector<double> pieces{0.0};
    for (double k : u.angular.kinks()) {
      if (k > 0.0 && k < std::numbers::pi) pieces.push_back(k);
    }
    pieces.push_back(std::numbers::pi);
    const double lower = surface_measure(N - 1);
    quad::Tolerance tol;
    tol.rel = 0.1 * opt.radial.tolerance;
    auto G = [&](double r) {
      const double fr = f.value(r);
      const double dfr = f.derivative(r);
      if (fr == 0.0 && dfr == 0.0) return 0.0;
      auto inner = [&](double phi) {
        const double radial = dfr * u.angular.value(phi);
        const double angular = fr * u.angular.derivative(phi) / r;
        const double sq = radial * radial + angular * angular;
        if (sq == 0.0) return 0.0;
        const double s = N == 2 ? 1.0 : std::pow(std::sin(phi), N - 2.0);
        return s * std::pow(sq, 0.5 * p);
      };
      const auto est = quad::adaptive(inner, pieces, tol);
      return lower * est.value * std::pow(r, power);
    };
    return integrate_radial(G, bp, power - p, opt.radial);
  }
  auto G = [&](double r) {
    const double fr = f.value(r);
    const double dfr = f.derivative(r);
    if (fr == 0.0 && dfr == 0.0) return 0.0;
    double sum = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
      const double radial = dfr * h[j];
      const double angular = fr * dh[j] / r;
      const double sq = radial * radial + angular * angular;
      if (sq > 0.0) sum += rule.weight[j] * std::pow(sq, 0.5 * p);
    }
    return sum * std::pow(r, power);
  };
  return integrate_radial(G, bp, tangential ? power - p : power, opt.radial);
}

Hardy1D radial_hardy_1d(const RadialProfile& f, double p, double beta, const RadialQuadrature& rq) {
  if (!(p > 1.0) || !std::isfinite(p)) fail(ErrorCode::InvalidArgument, "p must be > 1");
  if (!(beta > p - 1.0)) fail(ErrorCode::RegimeViolation, "beta > p - 1 violated");
  require_compact(f);
  Hardy1D out;
  out.constant = std::pow(p / (beta - p + 1.0), p);
  out.lhs = radial_moment(f, p, beta - p, rq);
  const std::vector<double> bp = f.breakpoints();
  const double grad = integrate_radial(
      [&](double r) {
        const double d = f.derivative(r);
        return d == 0.0 ? 0.0 : std::pow(std::abs(d), p) * std::pow(r, beta);
      },
      bp, beta, rq);
  out.rhs_with_constant = out.constant * grad;
  return out;
}

std::string_view check_name(Check check) {
  switch (check) {
    case Check::WeightedLq: return "weighted-lq";
    case Check::SharpL2Case1:
    case Check::SharpL2Case2:
    case Check::SharpL2Case3: return "sharp-l2";
    case Check::Homogeneous: return "homogeneous";
    case Check::Fractional: return "fractional";
  }
  return "?";
}

std::string_view check_case(Check check) {
  switch (check) {
    case Check::SharpL2Case1: return "case1";
    case Check::SharpL2Case2: return "case2";
    case Check::SharpL2Case3: return "case3";
    default: return "";
  }
}

namespace {

bool is_constant_weight(const SphericalWeight& g) {
  return g.kind() == SphericalWeight::Kind::Constant;
}

void finish(QuotientReport& rep, const QuotientOptions& opt) {
  rep.margin = rep.bound - rep.quotient;
  rep.holds = rep.margin >= -opt.slack_tolerance * std::abs(rep.bound);
  if (!std::isfinite(rep.quotient) || !std::isfinite(rep.bound)) {
    fail(ErrorCode::QuadratureFailure, "non-finite quotient for " + rep.test);
  }
}

}  // namespace

QuotientReport verify_case(const VerifyInput& in, const QuotientOptions& opt) {
  QuotientReport rep;
  rep.theorem = std::string(check_name(in.check));
  rep.case_id = std::string(check_case(in.check));
  rep.weight = in.g.name();
  rep.test = in.u.name();
  rep.N = in.N;
  rep.p = in.p;
  rep.alpha = in.alpha;
  rep.scheme = "adaptive-gk15";

  switch (in.check) {
    case Check::WeightedLq: {
      const Regime reg = Regime::local(in.N, in.p, in.alpha);
      const double q = admissible_q(in.N, in.p, in.user_q);
      const double norm = lq_norm(in.g, q, in.N, opt.sphere);
      rep.q = q;
      rep.lhs = lhs_weighted(in.u, in.g, reg, opt);
      rep.rhs = gradient_energy(in.u, reg, opt);
      rep.quotient = norm > 0.0 ? rep.lhs / (norm * rep.rhs) : 0.0;
      rep.empirical = true;
      rep.bound = in.empirical_constant ? *in.empirical_constant : rep.quotient;
      if (!in.empirical_constant) rep.notes.push_back("bound=own-quotient");
      break;
    }
    case Check::SharpL2Case1:
    case Check::SharpL2Case2:
    case Check::SharpL2Case3: {
      if (in.p != 2.0) fail(ErrorCode::InvalidArgument, "sharp-l2 checks need p = 2");
      const Regime reg = Regime::local(in.N, 2.0, in.alpha);
      double q = 0.0;
      if (in.check == Check::SharpL2Case2) {
        // The three-term form holds for any gamma0 > 0; only N > 3 is needed.
        if (in.N <= 3) fail(ErrorCode::DimensionTooSmall, "case2 needs N > 3");
        q = 0.5 * (in.N - 1);
      } else {
        q = resolve_case13(in.N, in.alpha,
                           in.check == Check::SharpL2Case1 ? Case13Id::Case1 : Case13Id::Case3)
                .q;
      }
      const double norm = lq_norm(in.g, q, in.N, opt.sphere);
      const double C = thm13_constant(in.N, in.alpha, norm, q);
      rep.q = q;
      rep.lhs = lhs_weighted(in.u, in.g, reg, opt);
      rep.rhs = gradient_energy(in.u, reg, opt);
      if (in.check == Check::SharpL2Case2) {
        const double g0 = gamma0_ratio(in.N, in.alpha);
        const double K = norm / std::pow(surface_measure(in.N), 1.0 / q);
        const double extra = weighted_moment(in.u, 2.0, 2.0 + in.alpha, in.N, opt);
        rep.gamma0 = g0;
        rep.extra = extra;
        rep.quotient = (rep.lhs + (g0 - 1.0) * K * extra) / rep.rhs;
        rep.bound = g0 * C;
        if (!(g0 > 1.0)) rep.notes.push_back("gamma0<=1");
      } else {
        rep.quotient = rep.lhs / rep.rhs;
        rep.bound = C;
      }
      rep.reduction_to_classical = is_constant_weight(in.g);
      break;
    }
    case Check::Homogeneous: {
      if (!in.g.nonneg()) fail(ErrorCode::NonnegRequired, "homogeneous check needs g >= 0");
      const Regime reg = Regime::local(in.N, in.p, in.alpha);
      const double q = in.N / (in.p + in.alpha);
      if (!(in.p + in.alpha > 0.0)) fail(ErrorCode::RegimeViolation, "p + alpha > 0 violated");
      const double norm = lq_norm(in.g, q, in.N, opt.sphere);
      rep.q = q;
      rep.lhs = lhs_weighted(in.u, in.g, reg, opt);
      rep.rhs = gradient_energy(in.u, reg, opt);
      rep.quotient = rep.lhs / rep.rhs;
      rep.bound = thm31_constant(reg, norm);
      rep.reduction_to_classical = is_constant_weight(in.g);
      break;
    }
    case Check::Fractional: {
      if (!in.g.nonneg()) fail(ErrorCode::NonnegRequired, "fractional check needs g >= 0");
      if (!in.u.angular.is_constant()) {
        fail(ErrorCode::InvalidArgument, "fractional check needs a radial test function");
      }
      const FracRegime frac = FracRegime::make(in.N, in.s, in.p);
      const LambdaCrossCheck lam = in.lambda ? *in.lambda : lambda_cross_validated(frac);
      const double q = in.N / frac.sp();
      const double norm = lq_norm(in.g, q, in.N, opt.sphere);
      const RadialProfile f = in.u.radial.scaled(in.u.angular.value(0.0));
      rep.s = in.s;
      rep.q = q;
      rep.lhs = frac_lhs_radial(f, in.g, frac, opt.sphere, opt.radial);
      rep.rhs = in.seminorm ? *in.seminorm : frac_seminorm_radial(f, frac, opt.seminorm);
      rep.quotient = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
      rep.bound = frac_constant(frac, norm, lam.lambda);
      rep.scheme = "graded-gauss+tanh-sinh";
      rep.est_error = lam.est_error;
      rep.reduction_to_classical = is_constant_weight(in.g);
      break;
    }
  }
  rep.bound *= in.bound_scale;
  if (in.bound_scale != 1.0) rep.notes.push_back("bound-scale=" + fmt(in.bound_scale));
  finish(rep, opt);
  return rep;
}

SweepFamily SweepFamily::make(std::string name, double outer_radius, int steps) {
  if (name != "power") fail(ErrorCode::FamilyInvalid, "unknown sweep family '" + name + "'");
  if (!(std::isfinite(outer_radius) && outer_radius > 0.0)) {
    fail(ErrorCode::FamilyInvalid, "sweep outer radius must be > 0");
  }
  if (steps < 1 || steps > 20) fail(ErrorCode::FamilyInvalid, "sweep steps must be in [1, 20]");
  return SweepFamily{std::move(name), outer_radius, steps};
}

RadialProfile SweepFamily::member(double optimizer_exponent, int k) const {
  if (k < 1 || k > steps) fail(ErrorCode::FamilyInvalid, "sweep step out of range");
  if (!(optimizer_exponent < 0.0)) {
    fail(ErrorCode::FamilyInvalid, "optimizer exponent must be negative");
  }
  const double a = optimizer_exponent + std::ldexp(1.0, -k);
  const double r0 = outer_radius * std::ldexp(1.0, -2 * k);
  return RadialProfile::truncated_power(a, r0, outer_radius, k * std::log(2.0));
}

std::vector<QuotientReport> sharpness_sweep(Check check, const SphericalWeight& g, int N, double p,
                                            double alpha_or_s, const SweepFamily& family,
                                            const QuotientOptions& opt) {
  std::vector<QuotientReport> out;
  if (check == Check::Homogeneous) {
    const Regime reg = Regime::local(N, p, alpha_or_s);
    const double a_star = -reg.gap() / p;
    for (int k = 1; k <= family.steps; ++k) {
      VerifyInput in;
      in.check = Check::Homogeneous;
      in.u = TestFunction{family.member(a_star, k), AngularFactor::one()};
      in.g = g;
      in.N = N;
      in.p = p;
      in.alpha = alpha_or_s;
      QuotientReport rep = verify_case(in, opt);
      rep.notes.push_back("step=" + std::to_string(k));
      out.push_back(std::move(rep));
    }
  } else if (check == Check::Fractional) {
    const FracRegime frac = FracRegime::make(N, alpha_or_s, p);
    const LambdaCrossCheck lam = lambda_cross_validated(frac);
    const double a_star = -(N - frac.sp()) / p;
    for (int k = 1; k <= family.steps; ++k) {
      VerifyInput in;
      in.check = Check::Fractional;
      in.u = TestFunction{family.member(a_star, k), AngularFactor::one()};
      in.g = g;
      in.N = N;
      in.p = p;
      in.s = alpha_or_s;
      in.lambda = lam;
      QuotientReport rep = verify_case(in, opt);
      rep.notes.push_back("step=" + std::to_string(k));
      out.push_back(std::move(rep));
    }
  } else {
    fail(ErrorCode::FamilyInvalid, "sweeps are defined for homogeneous and fractional checks");
  }
  return out;
}

std::vector<Hardy1D> hardy_1d_sweep(double p, double beta, int steps, const RadialQuadrature& rq) {
  if (steps < 1 || steps > 20) fail(ErrorCode::FamilyInvalid, "sweep steps must be in [1, 20]");
  if (!(beta > p - 1.0)) fail(ErrorCode::RegimeViolation, "beta > p - 1 violated");
  const double a_star = -(beta - p + 1.0) / p;
  std::vector<Hardy1D> out;
  for (int k = 1; k <= steps; ++k) {
    const double a = a_star + std::ldexp(1.0, -k);
    const double r0 = std::pow(10.0, -4.0 * k);
    out.push_back(radial_hardy_1d(RadialProfile::truncated_power(a, r0, 1.0, 2.0 * k), p, beta, rq));
  }
  return out;
}

}  // namespace hardylab
