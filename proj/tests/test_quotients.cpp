#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hardylab/catalog.hpp"
#include "hardylab/error.hpp"
#include "hardylab/quotients.hpp"
#include "oracles/oracles.hpp"

using namespace hardylab;
using oracle::kPi;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

TestFunction radial(RadialProfile f) { return TestFunction{std::move(f), AngularFactor::one()}; }

// |S^{N-2}| int_0^R int_0^pi F(r, phi) sin^{N-2} phi dphi dr by tensor Simpson,
// with r = t^2 to tame fractional powers of r at the origin.
double polar_simpson(int N, double R, const std::function<double(double, double)>& F, int n = 1600) {
  auto outer = [&](double t) {
    const double r = t * t;
    return 2 * t * oracle::simpson([&](double phi) { return F(r, phi) * std::pow(std::sin(phi), N - 2); }, 0.0, kPi, n);
  };
  return oracle::sphere_area(N - 1) * oracle::simpson(outer, 0.0, std::sqrt(R), n);
}

}  // namespace

TEST_CASE("lhs_weighted examples") {
  const Regime reg = Regime::local(3, 2.0, 0.0);
  const auto u = radial(RadialProfile::tent(1.0));
  const double one = lhs_weighted(u, SphericalWeight::constant(1.0), reg);
  CHECK(one == doctest::Approx(4 * kPi / 3).epsilon(1e-12));
  CHECK(lhs_weighted(radial(RadialProfile::tent(1.0).scaled(2.0)), SphericalWeight::constant(1.0), reg) ==
        doctest::Approx(4 * one).epsilon(1e-13));
  CHECK(lhs_weighted(u, SphericalWeight::cap(kPi / 2), reg) == doctest::Approx(one / 2).epsilon(1e-12));
}

TEST_CASE("gradient_energy examples") {
  const Regime reg = Regime::local(3, 2.0, 0.0);
  const auto u = radial(RadialProfile::tent(1.0));
  CHECK(gradient_energy(u, reg) == doctest::Approx(4 * kPi / 3).epsilon(1e-12));
  CHECK(gradient_energy(radial(RadialProfile::tent(1.0).scaled(0.0)), reg) == 0.0);
  CHECK(lhs_weighted(radial(RadialProfile::tent(1.0).scaled(0.0)), SphericalWeight::constant(1.0), reg) == 0.0);
}

TEST_CASE("both sides against a tensor Simpson oracle for u = (1-r) cos(phi)") {
  const TestFunction u{RadialProfile::tent(1.0), AngularFactor::cos()};
  for (auto [N, p, alpha] : {std::tuple{3, 2.0, 0.0}, {4, 3.0, -1.0}, {5, 1.5, 0.5}, {2, 1.5, -1.0}}) {
    const Regime reg = Regime::local(N, p, alpha);
    const double grad = polar_simpson(N, 1.0, [&](double r, double phi) {
      // (f'^2 h^2 + f^2 h'^2 / r^2)^{p/2} r^{N-alpha-1} with the r^{-p} pulled out
      const double f = 1 - r, c = std::cos(phi), sn = std::sin(phi);
      return std::pow(c * c * r * r + f * f * sn * sn, p / 2) * std::pow(r, N - alpha - 1 - p);
    });
    INFO("N=" << N << " p=" << p << " alpha=" << alpha);
    CHECK(gradient_energy(u, reg) == doctest::Approx(grad).epsilon(1e-8));
    // The angular integral separates, so the left side is a product of 1-D integrals.
    const double ang = oracle::sphere_area(N - 1) *
                       oracle::simpson([&](double phi) {
                         return std::pow(std::abs(std::cos(phi)), p) * std::pow(std::sin(phi), N - 2);
                       }, 0.0, kPi, 20000);
    const double rad = oracle::simpson([&](double r) { return std::pow(1 - r, p) * std::pow(r, N - p - alpha - 1); },
                                       0.0, 1.0, 20000);
    if (N - p - alpha - 1 >= 0) CHECK(lhs_weighted(u, SphericalWeight::constant(1.0), reg) == doctest::Approx(ang * rad).epsilon(1e-6));
  }
}

TEST_CASE("gradient_energy with h = 1 and p = 2 matches the radial formula") {
  for (auto [N, alpha] : {std::pair{3, 0.0}, {5, 0.5}, {4, -1.0}}) {
    const Regime reg = Regime::local(N, 2.0, alpha);
    for (const auto& f : {RadialProfile::exp_bump(0.5, 3.0), RadialProfile::tent(2.0)}) {
      const double R = f.support();
      const double formula = oracle::sphere_area(N) * oracle::simpson([&](double r) {
        const double d = f.derivative(r);
        return d * d * std::pow(r, N - alpha - 1);
      }, 0.0, R * (1 - 1e-12), 20000);
      CHECK(gradient_energy(radial(f), reg) == doctest::Approx(formula).epsilon(1e-8));
    }
  }
}

TEST_CASE("doubling the weight doubles the left side only") {
  const Regime reg = Regime::local(5, 2.0, 0.0);
  for (const auto& u : catalog::local_tests()) {
    for (const auto& g : catalog::weights()) {
      const auto g2 = g.scaled(2.0);
      CHECK(lhs_weighted(u, g2, reg) == doctest::Approx(2 * lhs_weighted(u, g, reg)).epsilon(1e-13));
    }
    CHECK(gradient_energy(u, reg) == gradient_energy(u, reg));
  }
}

TEST_CASE("dilation changes both sides by the same power") {
  for (auto [N, p, alpha] : {std::tuple{3, 2.0, 0.0}, {5, 3.0, -1.0}, {6, 1.5, 0.5}}) {
    const Regime reg = Regime::local(N, p, alpha);
    for (const auto& u : catalog::local_tests()) {
      if (u.radial.kind() == RadialProfile::Kind::Sampled) continue;
      const auto g = SphericalWeight::cap(kPi / 3);
      const double l0 = lhs_weighted(u, g, reg), r0 = gradient_energy(u, reg);
      for (double lam : {1.0 / 3.0, 2.0, 5.0, 7.0}) {
        const TestFunction d{u.radial.dilated(lam), u.angular};
        const double factor = std::pow(lam, p + alpha - N);
        INFO(u.name() << " lambda=" << lam);
        CHECK(lhs_weighted(d, g, reg) == doctest::Approx(factor * l0).epsilon(1e-10));
        CHECK(gradient_energy(d, reg) == doctest::Approx(factor * r0).epsilon(1e-10));
        CHECK(lhs_weighted(d, g, reg) / gradient_energy(d, reg) == doctest::Approx(l0 / r0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("radial_hardy_1d") {
  const auto zero = radial_hardy_1d(RadialProfile::tent(1.0).scaled(0.0), 2.0, 2.0);
  CHECK(zero.lhs == 0.0);
  CHECK(zero.rhs_with_constant == 0.0);
  const auto e = radial_hardy_1d(RadialProfile::exp_bump(1.0, 20.0), 2.0, 2.0);
  CHECK(e.lhs == doctest::Approx(0.5).epsilon(1e-7));
  CHECK(e.rhs_with_constant == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(e.constant == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(code_of([] { radial_hardy_1d(RadialProfile::tent(1.0), 2.0, 1.0); }) == ErrorCode::RegimeViolation);
  for (const auto& f : catalog::radial_profiles()) {
    for (auto [p, beta] : {std::pair{2.0, 2.0}, {3.0, 4.0}, {1.5, 0.75}}) {
      const auto h = radial_hardy_1d(f, p, beta);
      CHECK(h.lhs <= h.rhs_with_constant * (1 + 1e-9));
    }
  }
}

TEST_CASE("1-D sweep increases toward one") {
  for (auto [p, beta] : {std::pair{2.0, 2.0}, {3.0, 4.0}}) {
    const auto sweep = hardy_1d_sweep(p, beta, 8);
    REQUIRE(sweep.size() >= 2);
    for (std::size_t k = 1; k < sweep.size(); ++k) CHECK(sweep[k].ratio() >= sweep[k - 1].ratio() * (1 - 1e-3));
    CHECK(sweep.back().ratio() < 1.0);
    CHECK(sweep.back().ratio() >= 0.98);
  }
}

TEST_CASE("verify_case examples") {
  const auto tent = radial(RadialProfile::tent(1.0));
  VerifyInput in;
  in.u = tent;
  in.N = 5;
  in.alpha = 0.0;

  in.check = Check::SharpL2Case1;
  const auto c1 = verify_case(in);
  CHECK(c1.holds);
  CHECK(c1.bound == doctest::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(c1.quotient < 4.0 / 9.0);
  CHECK(c1.case_id == "case1");

  in.check = Check::Homogeneous;
  const auto h = verify_case(in);
  CHECK(h.holds);
  CHECK(h.reduction_to_classical);
  CHECK(h.bound == doctest::Approx(ckn_sharp_constant(Regime::local(5, 2.0, 0.0))).epsilon(1e-12));

  in.check = Check::SharpL2Case2;
  in.alpha = 0.3;
  in.u = TestFunction{RadialProfile::tent(1.0), AngularFactor::cap_smooth(kPi / 3, 0.5)};
  const auto c2 = verify_case(in);
  CHECK(c2.holds);
  CHECK(c2.margin >= 0.0);
  REQUIRE(c2.extra.has_value());
  REQUIRE(c2.gamma0.has_value());
  CHECK(*c2.gamma0 == doctest::Approx(0.91125).epsilon(1e-14));

  in.check = Check::Fractional;
  in.N = 3;
  in.s = 0.5;
  in.u = tent;
  const auto fr = verify_case(in);
  CHECK(fr.holds);
  CHECK(fr.s.has_value());

  in.check = Check::WeightedLq;
  in.N = 5;
  in.alpha = 0.0;
  in.empirical_constant = 10.0;
  const auto lq = verify_case(in);
  CHECK(lq.empirical);
  CHECK(lq.holds);

  in.check = Check::Homogeneous;
  in.g = catalog::signed_weight();
  CHECK(code_of([&] { verify_case(in); }) == ErrorCode::NonnegRequired);
}

TEST_CASE("bound_scale only moves the bound") {
  VerifyInput in;
  in.check = Check::SharpL2Case1;
  in.u = radial(RadialProfile::tent(1.0));
  in.N = 5;
  const auto a = verify_case(in);
  in.bound_scale = 0.01;
  const auto b = verify_case(in);
  CHECK(b.quotient == a.quotient);
  CHECK(b.bound == doctest::Approx(0.01 * a.bound).epsilon(1e-15));
  CHECK_FALSE(b.holds);
}

TEST_CASE("inequality suite on a regime sample") {
  const std::vector<std::tuple<Check, int, double, double>> cases = {
      {Check::SharpL2Case1, 5, 2.0, 0.0}, {Check::SharpL2Case3, 5, 2.0, 2.0}, {Check::SharpL2Case2, 6, 2.0, -0.5},
      {Check::Homogeneous, 4, 3.0, -1.0}, {Check::Homogeneous, 3, 1.5, 0.5}};
  for (auto [check, N, p, alpha] : cases) {
    for (const auto& g : catalog::weights()) {
      for (const auto& u : catalog::local_tests()) {
        VerifyInput in;
        in.check = check;
        in.u = u;
        in.g = g;
        in.N = N;
        in.p = p;
        in.alpha = alpha;
        const auto rep = verify_case(in);
        INFO(check_name(check) << " " << check_case(check) << " " << g.name() << " " << u.name()
                               << " quotient=" << rep.quotient << " bound=" << rep.bound);
        CHECK(rep.holds);
      }
    }
  }
}

TEST_CASE("sharpness sweep") {
  const auto fam = SweepFamily::make("power", 1.0, 4);
  const auto rows = sharpness_sweep(Check::Homogeneous, SphericalWeight::constant(1.0), 5, 2.0, 0.0, fam);
  REQUIRE(rows.size() == 4);
  CHECK(rows.front().quotient < rows.front().bound);
  for (std::size_t k = 1; k < rows.size(); ++k) CHECK(rows[k].quotient >= rows[k - 1].quotient * (1 - 1e-3));
  for (const auto& r : rows) CHECK(r.quotient < r.bound);

  CHECK(code_of([] { SweepFamily::make("gaussian", 1.0, 4); }) == ErrorCode::FamilyInvalid);
  CHECK(code_of([] { SweepFamily::make("power", 1.0, 0); }) == ErrorCode::FamilyInvalid);
  CHECK(code_of([] { SweepFamily::make("power", -1.0, 4); }) == ErrorCode::FamilyInvalid);
  CHECK(code_of([&] { fam.member(0.5, 1); }) == ErrorCode::FamilyInvalid);
  CHECK(code_of([&] { fam.member(-1.5, 5); }) == ErrorCode::FamilyInvalid);

  // The member approaches r^{a*} on [4^{-k} R, R].
  const auto m = fam.member(-1.5, 3);
  CHECK(m.value(0.5) == doctest::Approx(std::pow(0.5, -1.5 + 0.125)).epsilon(1e-14));
}

TEST_CASE("check names") {
  CHECK(check_name(Check::WeightedLq) == "weighted-lq");
  CHECK(check_name(Check::SharpL2Case2) == "sharp-l2");
  CHECK(check_case(Check::SharpL2Case2) == "case2");
  CHECK(check_case(Check::Fractional).empty());
}
