// Acceptance checks. Prints one PASS/FAIL line per check and exits non-zero
// if any fails. `--only k` runs a single check.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hardylab/catalog.hpp"
#include "hardylab/error.hpp"
#include "hardylab/fractional.hpp"
#include "hardylab/quotients.hpp"
#include "hardylab/rearrangement.hpp"
#include "hardylab/regimes.hpp"
#include "hardylab/sphere.hpp"
#include "oracles/oracles.hpp"

using namespace hardylab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> body;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double x, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

// Collects failures; the first few are kept for the detail line.
struct Tally {
  int total = 0;
  int failed = 0;
  std::vector<std::string> first;

  void expect(bool ok, const std::string& what) {
    ++total;
    if (ok) return;
    ++failed;
    if (first.size() < 3) first.push_back(what);
  }
  Outcome outcome(const std::string& summary) const {
    std::string d = summary + ", " + std::to_string(total - failed) + "/" + std::to_string(total) + " ok";
    for (const auto& f : first) d += "; " + f;
    return {failed == 0, d};
  }
};

const SphereQuadrature kSphere{};

// ------------------------------------------------------------------ 1
Outcome constant_reductions() {
  Tally t;
  double worst31 = 0.0, worst13 = 0.0, worst_frac = 0.0;
  const auto one = SphericalWeight::constant(1.0);
  for (int N = 3; N <= 8; ++N) {
    for (double p : {1.5, 2.0, 3.0}) {
      for (double alpha : {-1.0, 0.0, 0.5}) {
        if (!(N > p + alpha) || !(p + alpha > 0.0)) continue;
        const Regime reg = Regime::local(N, p, alpha);
        const double ckn = ckn_sharp_constant(reg);
        const double c31 = thm31_constant(reg, lq_norm(one, N / (p + alpha), N, kSphere));
        worst31 = std::max(worst31, rel(c31, ckn));
        t.expect(rel(c31, ckn) < 1e-12, "homogeneous N=" + std::to_string(N));
        if (p != 2.0) continue;
        const Case13 cls = classify_case13(N, alpha);
        for (const auto& opt : cls.available) {
          const double c13 = thm13_constant(N, alpha, lq_norm(one, opt.q, N, kSphere), opt.q);
          const double expect = 4.0 / std::pow(N - alpha - 2.0, 2);
          worst13 = std::max(worst13, rel(c13, expect));
          t.expect(rel(c13, expect) < 1e-12, "sharp-l2 N=" + std::to_string(N));
        }
      }
    }
  }
  for (int N : {1, 2, 3}) {
    for (double s : {0.25, 0.5, 0.75}) {
      for (double p : {1.0, 1.5, 2.0}) {
        if (!(N > s * p)) continue;
        const FracRegime f = FracRegime::make(N, s, p);
        const double lambda = lambda_constant(f, LambdaScheme::GradedGauss).lambda;
        const double c = frac_constant(f, lq_norm(one, N / f.sp(), N, kSphere), lambda);
        worst_frac = std::max(worst_frac, rel(c, lambda));
        // "Exactly": the normalization may only contribute rounding.
        t.expect(rel(c, lambda) <= 4e-16, "fractional N=" + std::to_string(N));
      }
    }
  }
  return t.outcome("max rel err homogeneous " + fmt(worst31, 3) + ", sharp-l2 " + fmt(worst13, 3) +
                   ", fractional " + fmt(worst_frac, 3));
}

// ------------------------------------------------------------------ 2
Outcome inequality_suite() {
  Tally t;
  const auto weights = catalog::weights();
  const auto tests = catalog::local_tests();
  const auto profiles = catalog::radial_profiles();
  auto run = [&](const VerifyInput& base, const std::vector<SphericalWeight>& gs) {
    for (const auto& g : gs) {
      for (const auto& u : tests) {
        VerifyInput in = base;
        in.g = g;
        in.u = u;
        const auto rep = verify_case(in);
        t.expect(rep.holds, std::string(check_name(in.check)) + " " + std::string(check_case(in.check)) + " N=" +
                                std::to_string(in.N) + " " + g.name() + " " + u.name() + " q/b=" +
                                fmt(rep.quotient / rep.bound, 12));
      }
    }
  };
  std::vector<SphericalWeight> with_signed = weights;
  with_signed.push_back(catalog::signed_weight());

  for (auto [check, N, alpha] : {std::tuple{Check::SharpL2Case1, 5, 0.0}, {Check::SharpL2Case1, 3, 0.5},
                                 {Check::SharpL2Case2, 5, 0.0}, {Check::SharpL2Case2, 6, -0.5},
                                 {Check::SharpL2Case3, 5, 2.0}, {Check::SharpL2Case3, 6, 1.0}}) {
    VerifyInput in;
    in.check = check;
    in.N = N;
    in.p = 2.0;
    in.alpha = alpha;
    run(in, with_signed);
  }
  for (auto [N, p, alpha] : {std::tuple{5, 2.0, 0.0}, {3, 1.5, 0.5}, {4, 3.0, -1.0}}) {
    VerifyInput in;
    in.check = Check::Homogeneous;
    in.N = N;
    in.p = p;
    in.alpha = alpha;
    run(in, weights);
  }
  for (auto [N, s, p] : {std::tuple{3, 0.5, 2.0}, {2, 0.25, 1.5}, {1, 0.25, 2.0}}) {
    const FracRegime f = FracRegime::make(N, s, p);
    VerifyInput in;
    in.check = Check::Fractional;
    in.N = N;
    in.s = s;
    in.p = p;
    in.lambda = lambda_cross_validated(f);
    for (const auto& prof : profiles) {
      in.u = TestFunction{prof, AngularFactor::one()};
      in.seminorm = frac_seminorm_radial(prof, f);
      for (const auto& g : weights) {
        in.g = g;
        const auto rep = verify_case(in);
        t.expect(rep.holds, "fractional N=" + std::to_string(N) + " " + g.name() + " " + prof.name());
      }
    }
  }
  return t.outcome(std::to_string(weights.size()) + " weights (+1 signed for sharp-l2) x " +
                   std::to_string(tests.size()) + " tests x 5 inequalities over 15 regimes");
}

// ------------------------------------------------------------------ 3
Outcome ckn_sweep() {
  const auto fam = SweepFamily::make("power", 1.0, 8);
  const auto rows = sharpness_sweep(Check::Homogeneous, SphericalWeight::constant(1.0), 5, 2.0, 0.0, fam);
  Tally t;
  const double bound = 4.0 / 9.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    t.expect(rows[k].quotient >= rows[k - 1].quotient * (1 - 1e-3), "step " + std::to_string(k + 1) + " decreased");
  }
  for (const auto& r : rows) t.expect(r.quotient < bound * (1 + 1e-9), "quotient above bound");
  t.expect(rows.size() == 8, "expected 8 steps");
  const double ratio = rows.back().quotient / bound;
  t.expect(ratio >= 0.95, "final ratio " + fmt(ratio));
  return t.outcome("final quotient " + fmt(rows.back().quotient, 8) + " = " + fmt(ratio, 5) + " x 4/9");
}

// ------------------------------------------------------------------ 4
Outcome hardy_1d() {
  Tally t;
  std::string summary;
  for (auto [p, beta] : {std::pair{2.0, 2.0}, {3.0, 4.0}}) {
    const auto sweep = hardy_1d_sweep(p, beta, 8);
    for (std::size_t k = 1; k < sweep.size(); ++k) {
      t.expect(sweep[k].ratio() >= sweep[k - 1].ratio() * (1 - 1e-3), "not monotone");
    }
    const double final_ratio = sweep.empty() ? 0.0 : sweep.back().ratio();
    t.expect(final_ratio >= 0.98 && final_ratio <= 1.0 + 1e-9, "(p,beta)=(" + fmt(p) + "," + fmt(beta) + ") ratio " + fmt(final_ratio));
    summary += "(p,beta)=(" + fmt(p) + "," + fmt(beta) + ") ratio " + fmt(final_ratio, 5) + " ";
  }
  return t.outcome(summary);
}

// ------------------------------------------------------------------ 5
Outcome lambda_cross_validation() {
  Tally t;
  double worst_scheme = 0.0, worst_refine = 0.0;
  for (int N : {1, 2, 3}) {
    for (double s : {0.25, 0.5, 0.75}) {
      for (double p : {1.0, 1.5, 2.0}) {
        if (!(N > s * p)) continue;
        const FracRegime f = FracRegime::make(N, s, p);
        const auto cross = lambda_cross_validated(f);
        worst_scheme = std::max(worst_scheme, cross.rel_diff);
        t.expect(cross.rel_diff < 1e-8, "schemes N=" + std::to_string(N));
        for (auto scheme : {LambdaScheme::GradedGauss, LambdaScheme::TanhSinh}) {
          const double base = scheme == LambdaScheme::GradedGauss ? cross.graded.lambda : cross.tanh_sinh.lambda;
          const double fine = lambda_constant(f, scheme, 1).lambda;
          worst_refine = std::max(worst_refine, rel(fine, base));
          t.expect(rel(fine, base) < 1e-9, std::string(scheme_name(scheme)) + " refine N=" + std::to_string(N));
        }
      }
    }
  }
  return t.outcome("max scheme diff " + fmt(worst_scheme, 3) + ", max refinement change " + fmt(worst_refine, 3));
}

// ------------------------------------------------------------------ 6
Outcome seminorm_monte_carlo() {
  Tally t;
  std::string summary;
  auto u = [](double r) { return std::max(0.0, 1.0 - r); };
  for (int N : {1, 2}) {
    const FracRegime f = FracRegime::make(N, 0.25, 2.0);
    const double l2 = oracle::sphere_area(N) * (N == 1 ? 1.0 / 3.0 : 1.0 / 12.0);
    const auto mc = oracle::gagliardo_p2(N, 0.25, 1.0, u, l2, 1000000, 600 + N);
    const double value = frac_seminorm_radial(RadialProfile::tent(1.0), f);
    const double z = (value - mc.mean) / mc.stderr_;
    t.expect(std::abs(z) <= 3.0, "N=" + std::to_string(N) + " z=" + fmt(z, 3));
    summary += "N=" + std::to_string(N) + " quadrature " + fmt(value, 10) + " MC " + fmt(mc.mean, 8) + " +- " +
               fmt(mc.stderr_, 3) + " (z=" + fmt(z, 3) + ") ";
  }
  return t.outcome(summary);
}

// ------------------------------------------------------------------ 7
Outcome fractional_sweep() {
  // Requested at (N, s, p) = (1, 1/2, 2), where sp = N: the fractional
  // inequality needs N > sp, so the constant is undefined there.
  Tally t;
  std::string detail;
  try {
    const auto fam = SweepFamily::make("power", 1.0, 8);
    const auto rows = sharpness_sweep(Check::Fractional, SphericalWeight::constant(1.0), 1, 2.0, 0.5, fam);
    const double ratio = rows.back().quotient / rows.back().bound;
    t.expect(ratio >= 0.90, "final ratio " + fmt(ratio));
    detail = "(1,1/2,2) final " + fmt(ratio, 5) + " x Lambda";
  } catch (const Error& e) {
    t.expect(false, std::string("(1,1/2,2): ") + e.what());
    detail = "(1,1/2,2) not computable";
  }
  return t.outcome(detail);
}

// ------------------------------------------------------------------ 8
Outcome rearrangement() {
  Tally t;
  std::string summary;
  const auto hemi = SphericalWeight::cap(oracle::kPi / 2);
  for (int N : {3, 5}) {
    const double d = 2.0;
    const auto w = HomogeneousWeight::make(hemi, d);
    const double A = rearranged_coefficient(w, N, kSphere);
    const double exact = std::pow(0.5, d / N);
    t.expect(rel(A, exact) < 1e-12, "closed form N=" + std::to_string(N));
    // |{A / |x|^d > tlev}| = |B_1| (A / tlev)^{N/d}
    const double tlev = 1.0;
    const auto vol = oracle::superlevel_volume(N, d, tlev, 1.0, [&](double phi) { return hemi(phi); }, 400000, 800 + N);
    const double A_mc = tlev * std::pow(vol.mean / oracle::ball_volume(N), d / N);
    t.expect(rel(A, A_mc) < 0.01, "MC N=" + std::to_string(N) + " " + fmt(A_mc));
    summary += "N=" + std::to_string(N) + " A=" + fmt(A, 8) + " MC " + fmt(A_mc, 5) + " ";
  }
  auto gen = oracle::rng(900);
  std::uniform_int_distribution<int> len(1, 60);
  std::uniform_real_distribution<double> val(0.0, 10.0), meas(0.1, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = len(gen);
    std::vector<double> u(n), v(n), m(n);
    for (int i = 0; i < n; ++i) {
      u[i] = val(gen);
      v[i] = val(gen);
      m[i] = meas(gen);
    }
    const double gap = hardy_littlewood_gap(SampledField::make(u, m), SampledField::make(v, m));
    worst = std::min(worst, gap);
    t.expect(gap >= -1e-12, "gap " + fmt(gap));
  }
  summary += "min Hardy-Littlewood gap over 1000 pairs " + fmt(worst, 3);
  return t.outcome(summary);
}

// ------------------------------------------------------------------ 9
Outcome dilation_invariance() {
  Tally t;
  double worst_local = 0.0, worst_frac = 0.0;
  const std::vector<double> lambdas{1.0 / 3.0, 2.0, 7.0};
  for (auto [N, p, alpha] : {std::tuple{5, 2.0, 0.0}, {3, 1.5, 0.5}, {4, 3.0, -1.0}}) {
    const Regime reg = Regime::local(N, p, alpha);
    for (const auto& u : catalog::local_tests()) {
      if (u.radial.kind() == RadialProfile::Kind::Sampled) continue;
      for (const auto& g : catalog::weights()) {
        const double q0 = lhs_weighted(u, g, reg) / gradient_energy(u, reg);
        for (double lam : lambdas) {
          const TestFunction d{u.radial.dilated(lam), u.angular};
          const double r = rel(lhs_weighted(d, g, reg) / gradient_energy(d, reg), q0);
          worst_local = std::max(worst_local, r);
          t.expect(r < 1e-10, "local " + u.name() + " lambda=" + fmt(lam) + " rel " + fmt(r, 3));
        }
      }
    }
  }
  for (auto [N, s, p] : {std::tuple{3, 0.5, 2.0}, {1, 0.25, 2.0}}) {
    const FracRegime f = FracRegime::make(N, s, p);
    const auto g = SphericalWeight::constant(1.0);
    for (const auto& prof : {RadialProfile::tent(1.0), RadialProfile::exp_bump(0.5, 3.0),
                             RadialProfile::truncated_power(-0.5, 0.05, 1.0, 1.0)}) {
      const double q0 = frac_lhs_radial(prof, g, f, kSphere) / frac_seminorm_radial(prof, f);
      for (double lam : lambdas) {
        const auto d = prof.dilated(lam);
        const double r = rel(frac_lhs_radial(d, g, f, kSphere) / frac_seminorm_radial(d, f), q0);
        worst_frac = std::max(worst_frac, r);
        t.expect(r < 1e-8, "fractional " + prof.name() + " lambda=" + fmt(lam) + " rel " + fmt(r, 3));
      }
    }
  }
  return t.outcome("max rel change local " + fmt(worst_local, 3) + ", fractional " + fmt(worst_frac, 3));
}

// ------------------------------------------------------------------ 10
Outcome case2_combined() {
  Tally t;
  const int N = 5;
  const double alpha = 0.3;
  double min_slack = INFINITY;
  for (const auto& g : catalog::weights()) {
    for (const auto& u : catalog::local_tests()) {
      VerifyInput in;
      in.check = Check::SharpL2Case2;
      in.N = N;
      in.p = 2.0;
      in.alpha = alpha;
      in.g = g;
      in.u = u;
      const auto rep = verify_case(in);
      min_slack = std::min(min_slack, rep.margin / rep.bound);
      t.expect(rep.holds && rep.margin >= 0.0, "slack " + g.name() + " " + u.name());
    }
  }
  const double g0 = gamma0_ratio(N, alpha);
  t.expect(g0 > 1.0, "gamma0 = (N-alpha-2)^2/((N-1)(N-3)) = " + fmt(g0, 8) + " is not > 1");
  return t.outcome("min relative slack " + fmt(min_slack, 4) + ", gamma0 " + fmt(g0, 8));
}

// ------------------------------------------------------------------ 11
#ifndef HARDYLAB_CLI_PATH
#define HARDYLAB_CLI_PATH "hardylab"
#endif

// Exit status of `cmd`, with stdout sent to `out` (discarded by default).
int exit_code_of(const std::string& cmd, const std::string& out = "/dev/null") {
  const int status = std::system((cmd + " > '" + out + "' 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_contract() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("hardylab_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  };
  const std::string cli = HARDYLAB_CLI_PATH;
  const auto ckn = write("ckn.json", R"({"command":"constant","theorem":"ckn","N":5,"p":2,"alpha":0})");
  const auto verify = write("verify.json", R"({"command":"verify","theorem":"sharp-l2","N":5,"alpha":0,"tests":"catalog"})");
  const auto lambda = write("lambda.json", R"({"command":"lambda","N":3,"s":0.5,"p":2})");
  const auto broken = write("broken.json", R"({"command":"constant","theorem":"ckn","N":5,)");
  const auto regime = write("regime.json", R"({"command":"constant","theorem":"ckn","N":3,"p":3,"alpha":1})");
  const auto unknown = write("unknown.json", R"({"command":"constant","theorem":"ckn","N":5,"p":2,"alpha":0,"weights":[{"kind":"gaussian"}]})");

  struct Case {
    std::string args;
    int expected;
  };
  const std::vector<Case> matrix = {
      {"constant --config " + ckn, 0},
      {"verify --config " + verify, 0},
      {"lambda --config " + lambda + " --format json", 0},
      {"verify --config " + verify + " --test-bound-scale 0.5", 2},
      {"constant --config " + broken, 1},
      {"constant --config " + regime, 1},
      {"constant --config " + unknown, 1},
      {"verify --config " + ckn, 1},
      {"constant --config " + (dir / "missing.json").string(), 1},
      {"constant", 1},
      {"frobnicate --config " + ckn, 1},
      {"constant --config " + ckn + " --format xml", 1},
      {"constant --config " + ckn + " --out " + (dir / "no" / "such" / "out.csv").string(), 1},
  };
  Tally t;
  for (const auto& c : matrix) {
    const int got = exit_code_of("'" + cli + "' " + c.args);
    t.expect(got == c.expected, "'" + c.args + "' exited " + std::to_string(got) + ", expected " + std::to_string(c.expected));
  }
  for (const std::string fmt_name : {"csv", "json"}) {
    const auto a = dir / ("a." + fmt_name), b = dir / ("b." + fmt_name);
    exit_code_of("'" + cli + "' verify --config " + verify + " --format " + fmt_name + " --out " + a.string());
    exit_code_of("'" + cli + "' verify --config " + verify + " --format " + fmt_name + " --out " + b.string());
    const std::string ra = slurp(a), rb = slurp(b);
    t.expect(!ra.empty() && ra == rb, fmt_name + " reports differ");
    exit_code_of("'" + cli + "' verify --config " + verify + " --format " + fmt_name, (dir / "s1").string());
    exit_code_of("'" + cli + "' verify --config " + verify + " --format " + fmt_name, (dir / "s2").string());
    t.expect(slurp(dir / "s1") == ra && slurp(dir / "s2") == ra, fmt_name + " stdout differs from file");
  }
  fs::remove_all(dir);
  return t.outcome(std::to_string(matrix.size()) + " exit-code cases, csv/json reproduction");
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only k]\n";
      return 1;
    }
  }
  const std::vector<Criterion> checks = {
      {1, "constant reductions for g = 1", 5, constant_reductions},
      {2, "inequality suite over the catalogs", 120, inequality_suite},
      {3, "CKN sharpness sweep (5, 2, 0)", 60, ckn_sweep},
      {4, "1-D Hardy sharpness", 30, hardy_1d},
      {5, "Lambda cross-validation", 30, lambda_cross_validation},
      {6, "radial seminorm against Monte-Carlo", 120, seminorm_monte_carlo},
      {7, "fractional sharpness sweep (1, 1/2, 2)", 120, fractional_sweep},
      {8, "rearrangement coefficient and Hardy-Littlewood", 60, rearrangement},
      {9, "dilation invariance", 30, dilation_invariance},
      {10, "case 2 combined inequality at (5, 0.3)", 60, case2_combined},
      {11, "CLI exit codes and reproducibility", 10, cli_contract},
  };
  if (only != 0 && (only < 1 || only > static_cast<int>(checks.size()))) {
    std::cerr << "acceptance: no check " << only << "\n";
    return 1;
  }
  int failures = 0;
  for (const auto& c : checks) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = out.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %2d %s: %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                out.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
