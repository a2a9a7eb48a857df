#include "hardylab/regimes.hpp"

#include <cmath>
#include <sstream>

#include "hardylab/error.hpp"
#include "hardylab/sphere.hpp"

namespace hardylab {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    fail(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
  }
}

void require_case13_regime(int N, double alpha) {
  require_finite(alpha, "alpha");
  if (N < 2) fail(ErrorCode::RegimeViolation, "N >= 2 violated");
  if (!(N > 2.0 + alpha)) {
    fail(ErrorCode::RegimeViolation,
         "N > 2 + alpha violated (N=" + std::to_string(N) + ", alpha=" + fmt(alpha) + ")");
  }
}

}  // namespace

Regime Regime::local(int N, double p, double alpha) {
  require_finite(p, "p");
  require_finite(alpha, "alpha");
  if (N < 1) fail(ErrorCode::RegimeViolation, "N >= 1 violated");
  if (!(p > 1.0)) fail(ErrorCode::RegimeViolation, "p > 1 violated (p=" + fmt(p) + ")");
  if (!(N > p + alpha)) {
    fail(ErrorCode::RegimeViolation, "N > p + alpha violated (N=" + std::to_string(N) +
                                         ", p=" + fmt(p) + ", alpha=" + fmt(alpha) + ")");
  }
  return Regime{N, p, alpha};
}

FracRegime FracRegime::make(int N, double s, double p) {
  require_finite(s, "s");
  require_finite(p, "p");
  if (N < 1) fail(ErrorCode::RegimeViolation, "N >= 1 violated");
  if (!(s > 0.0 && s < 1.0)) fail(ErrorCode::RegimeViolation, "0 < s < 1 violated (s=" + fmt(s) + ")");
  if (!(p >= 1.0)) fail(ErrorCode::RegimeViolation, "p >= 1 violated (p=" + fmt(p) + ")");
  if (!(N > s * p)) {
    fail(ErrorCode::RegimeViolation, "N > s*p violated (N=" + std::to_string(N) +
                                         ", s*p=" + fmt(s * p) + ")");
  }
  return FracRegime{N, s, p};
}

double admissible_q(int N, double p, std::optional<double> user_q) {
  require_finite(p, "p");
  if (user_q) require_finite(*user_q, "q");
  if (N < 2) fail(ErrorCode::RegimeViolation, "N >= 2 violated");
  if (!(p > 1.0)) fail(ErrorCode::RegimeViolation, "p > 1 violated");
  const double critical = N - 1.0;
  if (p < critical) return critical / p;
  if (p > critical) return 1.0;
  if (!user_q || !(*user_q > 1.0)) {
    fail(ErrorCode::QRequired, "p = N-1 requires an explicit q > 1");
  }
  return *user_q;
}

double ckn_sharp_constant(const Regime& regime) {
  const Regime r = Regime::local(regime.N, regime.p, regime.alpha);
  return std::pow(r.p / r.gap(), r.p);
}

std::string_view case13_name(Case13Id id) {
  switch (id) {
    case Case13Id::Case1: return "case1";
    case Case13Id::Case2: return "case2";
    case Case13Id::Case3: return "case3";
  }
  return "unknown";
}

bool Case13::has(Case13Id id) const {
  for (const auto& o : available) {
    if (o.id == id) return true;
  }
  return false;
}

const Case13Option& Case13::option(Case13Id id) const {
  for (const auto& o : available) {
    if (o.id == id) return o;
  }
  fail(ErrorCode::RegimeViolation, std::string(case13_name(id)) + " not available");
}

Case13 classify_case13(int N, double alpha) {
  require_case13_regime(N, alpha);
  const double gap2 = (N - alpha - 2.0) * (N - alpha - 2.0);
  Case13 c{};
  c.threshold_lhs = 2.0 * N * alpha;
  c.threshold_rhs = gap2;
  c.statement_threshold_rhs = (1.0 + alpha) * (1.0 + alpha);
  c.critical_rhs = (N - 1.0) * (N - 3.0);

  const double q1 = gap2 / (2.0 * (N - 1.0)) + 1.0;
  const double t1 = 2.0 * q1 / (q1 - 1.0);
  const bool high_dim = N > 3;
  const double q23 = (N - 1.0) / 2.0;
  const double t23 = high_dim ? 2.0 * (N - 1.0) / (N - 3.0) : 0.0;

  if (!high_dim || gap2 >= c.critical_rhs) {
    c.available.push_back({Case13Id::Case1, q1, std::nullopt, t1});
  }
  if (high_dim && gap2 > c.critical_rhs) {
    c.available.push_back({Case13Id::Case2, q23, gap2 / c.critical_rhs, t23});
  }
  if (high_dim && gap2 <= c.critical_rhs) {
    c.available.push_back({Case13Id::Case3, q23, std::nullopt, t23});
  }
  const Case13Option& primary = c.available.front();
  c.case_id = primary.id;
  c.q = primary.q;
  c.gamma0 = primary.gamma0;
  if (c.case_id == Case13Id::Case1 && c.has(Case13Id::Case2)) {
    c.gamma0 = c.option(Case13Id::Case2).gamma0;
  }
  return c;
}

Case13Option resolve_case13(int N, double alpha, Case13Id requested) {
  require_case13_regime(N, alpha);
  if (requested != Case13Id::Case1 && N <= 3) {
    fail(ErrorCode::DimensionTooSmall,
         std::string(case13_name(requested)) + " requires N > 3 (N=" + std::to_string(N) + ")");
  }
  const Case13 c = classify_case13(N, alpha);
  if (c.has(requested)) return c.option(requested);
  switch (requested) {
    case Case13Id::Case1:
      fail(ErrorCode::RegimeViolation,
           "case1 requires (N-alpha-2)^2 >= (N-1)(N-3) so that t <= 2(N-1)/(N-3) (" +
               fmt(c.threshold_rhs) + " < " + fmt(c.critical_rhs) + ")");
    case Case13Id::Case2:
      fail(ErrorCode::RegimeViolation, "case2 requires gamma0 > 1 (gamma0=" +
                                           fmt(c.threshold_rhs / c.critical_rhs) + ")");
    case Case13Id::Case3:
      fail(ErrorCode::RegimeViolation,
           "case3 requires (N-alpha-2)^2 <= (N-1)(N-3) (" + fmt(c.threshold_rhs) + " > " +
               fmt(c.critical_rhs) + ")");
  }
  fail(ErrorCode::InvalidArgument, "unknown case");
}

double gamma0_ratio(int N, double alpha) {
  require_finite(alpha, "alpha");
  if (N <= 3) fail(ErrorCode::DimensionTooSmall, "gamma0 requires N > 3");
  return (N - alpha - 2.0) * (N - alpha - 2.0) / ((N - 1.0) * (N - 3.0));
}

double gamma0(int N, double alpha) {
  const double g = gamma0_ratio(N, alpha);
  if (!(g > 1.0)) {
    fail(ErrorCode::RegimeViolation, "gamma0 > 1 violated (gamma0=" + fmt(g) + ")");
  }
  return g;
}

double thm13_constant(int N, double alpha, double g_norm, double q) {
  require_case13_regime(N, alpha);
  require_finite(g_norm, "g_norm");
  require_finite(q, "q");
  if (g_norm < 0.0) fail(ErrorCode::InvalidArgument, "g_norm must be >= 0");
  if (!(q >= 1.0)) fail(ErrorCode::ExponentOutOfRange, "q >= 1 violated");
  const double gap = N - alpha - 2.0;
  return 4.0 * g_norm / (gap * gap * std::pow(surface_measure(N), 1.0 / q));
}

double thm31_constant(const Regime& regime, double g_norm) {
  const Regime r = Regime::local(regime.N, regime.p, regime.alpha);
  require_finite(g_norm, "g_norm");
  if (!(r.p + r.alpha > 0.0)) fail(ErrorCode::RegimeViolation, "p + alpha > 0 violated");
  if (g_norm < 0.0) fail(ErrorCode::InvalidArgument, "g_norm must be >= 0");
  const double d = r.p + r.alpha;
  return std::pow(r.p / r.gap(), r.p) * g_norm / std::pow(surface_measure(r.N), d / r.N);
}

double frac_constant(const FracRegime& frac, double g_norm, double lambda) {
  const FracRegime f = FracRegime::make(frac.N, frac.s, frac.p);
  require_finite(g_norm, "g_norm");
  require_finite(lambda, "lambda");
  if (g_norm < 0.0) fail(ErrorCode::InvalidArgument, "g_norm must be >= 0");
  if (!(lambda > 0.0)) fail(ErrorCode::InvalidArgument, "lambda must be > 0");
  return lambda * g_norm / std::pow(surface_measure(f.N), f.sp() / f.N);
}

}  // namespace hardylab
