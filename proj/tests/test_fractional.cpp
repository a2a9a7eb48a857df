#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardylab/catalog.hpp"
#include "hardylab/error.hpp"
#include "hardylab/fractional.hpp"
#include "oracles/oracles.hpp"

using namespace hardylab;
using oracle::kPi;

namespace {

const SphereQuadrature quad{};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::vector<FracRegime> lambda_grid() {
  std::vector<FracRegime> out;
  for (int N : {1, 2, 3}) {
    for (double s : {0.25, 0.5, 0.75}) {
      for (double p : {1.0, 1.5, 2.0}) {
        if (N > s * p) out.push_back(FracRegime::make(N, s, p));
      }
    }
  }
  return out;
}

// Psi by Simpson in the polar angle: |S^{N-2}| int_0^pi sin^{N-2} (1 - 2r cos + r^2)^{-(N+sp)/2}.
double psi_simpson(int N, double sp, double r) {
  auto f = [&](double th) {
    return std::pow(std::sin(th), N - 2) * std::pow(1 - 2 * r * std::cos(th) + r * r, -(N + sp) / 2);
  };
  return oracle::sphere_area(N - 1) * oracle::simpson(f, 0.0, kPi, 40000);
}

}  // namespace

TEST_CASE("psi closed forms") {
  // The kernel only sees N and sp, so sp = N is fine here.
  const FracRegime one{1, 0.5, 2.0};
  CHECK(psi(one, 0.5) == doctest::Approx(4.0 + 4.0 / 9.0).epsilon(1e-14));
  for (int N : {2, 3, 4, 7}) {
    CHECK(psi(FracRegime::make(N, 0.5, 2.0), 0.0) == doctest::Approx(oracle::sphere_area(N)).epsilon(1e-13));
  }
  // N = 3: the zonal integral has an elementary antiderivative.
  for (double sp : {0.25, 0.75, 1.5}) {
    const FracRegime f = FracRegime::make(3, sp / 2.0, 2.0);
    const double m = (3 + sp) / 2;
    for (double r : {0.05, 0.4, 0.5, 0.51, 0.8, 0.97, 0.999}) {
      const double exact =
          2 * kPi * (std::pow(1 - r, 2 * (1 - m)) - std::pow(1 + r, 2 * (1 - m))) / (2 * r * (m - 1));
      CHECK(psi(f, r) == doctest::Approx(exact).epsilon(1e-11));
    }
  }
}

TEST_CASE("psi matches a brute-force zonal integral") {
  for (int N : {2, 4, 5}) {
    for (double r : {0.3, 0.6, 0.85}) {
      const FracRegime f = FracRegime::make(N, 0.5, 1.5);
      CHECK(psi(f, r) == doctest::Approx(psi_simpson(N, 0.75, r)).epsilon(1e-9));
    }
  }
}

TEST_CASE("psi series and quadrature agree on their overlap") {
  for (const auto& f : lambda_grid()) {
    if (f.N < 2) continue;
    for (double r : {0.3, 0.5, 0.6, 0.7}) {
      const double w = 1.0 - r;
      const double via_quadrature = detail::psi_scaled_quadrature(f, w) / std::pow(w, 1 + f.sp());
      CHECK(detail::psi_series(f, r) == doctest::Approx(via_quadrature).epsilon(1e-12));
    }
  }
}

TEST_CASE("psi is strictly increasing and psi_scaled is consistent") {
  for (const auto& f : lambda_grid()) {
    double prev = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double r = i / 50.0;
      const double v = psi(f, r);
      CHECK(v > prev);
      prev = v;
    }
    for (double w : {0.9, 0.4, 0.05}) {
      CHECK(psi_scaled(f, w) == doctest::Approx(psi(f, 1 - w) * std::pow(w, 1 + f.sp())).epsilon(1e-12));
    }
    CHECK(psi_scaled(f, 1e-9) == doctest::Approx(psi_scaled_limit(f)).epsilon(1e-6));
  }
  const FracRegime two = FracRegime::make(2, 0.5, 2.0);
  CHECK(psi(two, 0.9) > psi(two, 0.5));
  CHECK(std::isfinite(psi(two, 0.9)));
  CHECK(code_of([&] { psi(two, 1.0); }) == ErrorCode::KernelSingularity);
  CHECK(code_of([&] { psi(two, -0.1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lambda integrand spot value") {
  const FracRegime f = FracRegime::make(1, 0.5, 1.0);
  const double psi_half = std::pow(0.5, -1.5) + std::pow(1.5, -1.5);
  CHECK(lambda_integrand(f, 0.5) ==
        doctest::Approx(std::pow(0.5, -0.5) * (1 - std::sqrt(0.5)) * psi_half).epsilon(1e-14));
}

TEST_CASE("lambda: both schemes agree and refinement is stable") {
  const FracRegime a = FracRegime::make(1, 0.5, 1.0);
  const auto ga = lambda_constant(a, LambdaScheme::GradedGauss);
  const auto ta = lambda_constant(a, LambdaScheme::TanhSinh);
  CHECK(ga.lambda > 0.0);
  CHECK(std::abs(ga.lambda - ta.lambda) <= 1e-8 * ga.lambda);
  CHECK(ga.lambda == doctest::Approx(1.0 / (2.0 * ga.inverse_integral)).epsilon(1e-15));
  CHECK(ga.est_error >= 0.0);

  const FracRegime b = FracRegime::make(3, 0.5, 2.0);
  const auto base = lambda_constant(b, LambdaScheme::GradedGauss, 0);
  const auto fine = lambda_constant(b, LambdaScheme::GradedGauss, 1);
  CHECK(std::abs(fine.lambda - base.lambda) < 1e-9 * base.lambda);
  const auto cross = lambda_cross_validated(b);
  CHECK(cross.rel_diff < 1e-8);
  CHECK(cross.lambda == base.lambda);
  CHECK(scheme_name(LambdaScheme::TanhSinh) == "tanh-sinh");
  CHECK(parse_scheme("graded-gauss") == LambdaScheme::GradedGauss);
  CHECK_FALSE(parse_scheme("simpson").has_value());
  CHECK(code_of([&] { lambda_constant(b, LambdaScheme::GradedGauss, 9); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lambda at p = 1 is the ball ratio") {
  // Per_s((-1,1)) = 16 sqrt(2) and int_{-1}^{1} |x|^{-1/2} = 4.
  const FracRegime f = FracRegime::make(1, 0.5, 1.0);
  CHECK(lambda_cross_validated(f).lambda == doctest::Approx(1.0 / (4.0 * std::sqrt(2.0))).epsilon(1e-13));
}

TEST_CASE("p = 1: radially decreasing profiles are extremal") {
  // By the coarea formula every superlevel set is a ball, and balls all have
  // the same quotient, so the inequality is an equality.
  for (auto [N, s] : {std::pair{1, 0.5}, {2, 0.25}, {3, 0.75}}) {
    const FracRegime f = FracRegime::make(N, s, 1.0);
    const double lambda = lambda_cross_validated(f).lambda;
    for (const auto& prof : {RadialProfile::tent(1.0), RadialProfile::truncated_power(-0.5, 0.01, 1.0, 1.0),
                             RadialProfile::exp_bump(0.5, 6.0), RadialProfile::truncated_power(-1.0, 0.05, 2.0, 2.0)}) {
      const double lhs = frac_lhs_radial(prof, SphericalWeight::constant(1.0), f, quad);
      INFO("N=" << N << " s=" << s << " " << prof.name());
      CHECK(lhs / (lambda * frac_seminorm_radial(prof, f)) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("seminorm: zero, homogeneity and dilation") {
  const FracRegime f = FracRegime::make(2, 0.5, 1.5);
  const auto tent = RadialProfile::tent(1.0);
  CHECK(frac_seminorm_radial(tent.scaled(0.0), f) == 0.0);
  const double base = frac_seminorm_radial(tent, f);
  CHECK(base > 0.0);
  CHECK(frac_seminorm_radial(tent.scaled(2.0), f) == doctest::Approx(std::pow(2.0, 1.5) * base).epsilon(1e-12));
  for (double lam : {1.0 / 3.0, 2.0, 7.0}) {
    CHECK(frac_seminorm_radial(tent.dilated(lam), f) ==
          doctest::Approx(std::pow(lam, f.sp() - f.N) * base).epsilon(1e-12));
  }
  const auto detail = frac_seminorm_radial_detailed(tent, f);
  CHECK(detail.band_bound <= 1e-9 * detail.value);
  CHECK(detail.value == doctest::Approx(detail.near + detail.far).epsilon(1e-9).scale(0.0));
  const auto open = RadialProfile::sampled({0.5, 1.0}, {1.0, 1.0});
  CHECK(code_of([&] { frac_seminorm_radial(open, f); }) == ErrorCode::SupportRequired);
}

TEST_CASE("seminorm matches the Monte-Carlo double integral (N = 1, 2)") {
  const auto tent = RadialProfile::tent(1.0);
  auto u = [](double r) { return std::max(0.0, 1.0 - r); };
  for (int N : {1, 2}) {
    const FracRegime f = FracRegime::make(N, 0.25, 2.0);
    // ||u||_2^2 = |S^{N-1}| int (1-r)^2 r^{N-1} dr
    const double l2 = oracle::sphere_area(N) * (N == 1 ? 1.0 / 3.0 : 1.0 / 12.0);
    const auto mc = oracle::gagliardo_p2(N, 0.25, 1.0, u, l2, 200000, 40 + N);
    const double value = frac_seminorm_radial(tent, f);
    INFO("N=" << N << " value=" << value << " mc=" << mc.mean << " +- " << mc.stderr_);
    CHECK(mc.within(value, 3.0));
  }
}

TEST_CASE("frac_lhs_radial") {
  const FracRegime f = FracRegime::make(2, 0.5, 2.0);
  const auto tent = RadialProfile::tent(1.0);
  const double one = frac_lhs_radial(tent, SphericalWeight::constant(1.0), f, quad);
  CHECK(one == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
  CHECK(frac_lhs_radial(tent, SphericalWeight::cap(kPi / 2), f, quad) == doctest::Approx(one / 2).epsilon(1e-12));
  CHECK(code_of([&] { frac_lhs_radial(tent, catalog::signed_weight(), f, quad); }) == ErrorCode::NonnegRequired);

  std::uint64_t salt = 60;
  for (const auto& g : catalog::weights()) {
    for (const auto& prof : {RadialProfile::tent(1.5), RadialProfile::exp_bump(0.5, 2.0)}) {
      const double value = frac_lhs_radial(prof, g, f, quad);
      const auto mc = oracle::weighted_moment_2d(2.0, f.sp(), prof.support(), [&](double r) { return prof.value(r); },
                                                 [&](double p) { return g(p); }, 100000, ++salt);
      INFO(g.name() << " " << prof.name() << " value=" << value << " mc=" << mc.mean << " +- " << mc.stderr_);
      CHECK(mc.within(value, 3.0));
    }
  }
}

TEST_CASE("fractional inequality on the radial catalog") {
  for (auto [N, s, p] : {std::tuple{3, 0.5, 2.0}, {2, 0.25, 1.5}, {1, 0.25, 2.0}, {1, 0.5, 1.0}}) {
    const FracRegime f = FracRegime::make(N, s, p);
    const double lambda = lambda_cross_validated(f).lambda;
    for (const auto& prof : catalog::radial_profiles()) {
      const double seminorm = frac_seminorm_radial(prof, f);
      const double lhs = frac_lhs_radial(prof, SphericalWeight::constant(1.0), f, quad);
      INFO("N=" << N << " s=" << s << " p=" << p << " " << prof.name());
      CHECK(lhs <= lambda * seminorm * (1 + 1e-6));
      for (const auto& g : catalog::weights()) {
        const double bound = frac_constant(f, lq_norm(g, N / f.sp(), N, quad), lambda);
        CHECK(frac_lhs_radial(prof, g, f, quad) <= bound * seminorm * (1 + 1e-6));
      }
    }
  }
}

TEST_CASE("fractional quotient is dilation invariant") {
  const FracRegime f = FracRegime::make(3, 0.5, 2.0);
  const auto g = SphericalWeight::constant(1.0);
  for (const auto& prof : {RadialProfile::tent(1.0), RadialProfile::exp_bump(0.5, 3.0),
                           RadialProfile::truncated_power(-0.5, 0.05, 1.0, 1.0)}) {
    const double q0 = frac_lhs_radial(prof, g, f, quad) / frac_seminorm_radial(prof, f);
    for (double lam : {1.0 / 3.0, 2.0, 7.0}) {
      const auto d = prof.dilated(lam);
      CHECK(frac_lhs_radial(d, g, f, quad) / frac_seminorm_radial(d, f) == doctest::Approx(q0).epsilon(1e-8));
    }
  }
}
