#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hardylab/catalog.hpp"
#include "hardylab/error.hpp"
#include "hardylab/sphere.hpp"
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

}  // namespace

TEST_CASE("surface_measure") {
  CHECK(surface_measure(1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(surface_measure(2) == doctest::Approx(2 * kPi).epsilon(1e-15));
  CHECK(surface_measure(3) == doctest::Approx(4 * kPi).epsilon(1e-15));
  CHECK(surface_measure(4) == doctest::Approx(2 * kPi * kPi).epsilon(1e-15));
  CHECK(code_of([] { surface_measure(0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("integrate_zonal examples") {
  const auto one = SphericalWeight::constant(1.0);
  for (int N = 2; N <= 10; ++N) {
    CHECK(integrate_zonal(one, N, quad) == doctest::Approx(oracle::sphere_area(N)).epsilon(1e-13));
  }
  const auto cos2 = SphericalWeight::zonal_power(2.0);
  CHECK(integrate_zonal(cos2, 3, quad) == doctest::Approx(4 * kPi / 3).epsilon(1e-13));
  const auto hemi = SphericalWeight::cap(kPi / 2);
  CHECK(integrate_zonal(hemi, 5, quad) == doctest::Approx(oracle::sphere_area(5) / 2).epsilon(1e-13));
  // S^0 carries counting measure on the two poles.
  CHECK(integrate_zonal(hemi, 1, quad) == doctest::Approx(1.0));
}

TEST_CASE("lq_norm examples") {
  for (int N : {2, 3, 6}) {
    for (double q : {1.0, 1.5, 2.0, 3.7}) {
      CHECK(lq_norm(SphericalWeight::constant(2.5), q, N, quad) ==
            doctest::Approx(2.5 * std::pow(oracle::sphere_area(N), 1 / q)).epsilon(1e-13));
      CHECK(lq_norm(SphericalWeight::cap(kPi / 2), q, N, quad) ==
            doctest::Approx(std::pow(oracle::sphere_area(N) / 2, 1 / q)).epsilon(1e-13));
    }
  }
  // |cos| in L^2(S^2): independent 1-D Simpson of cos^2 sin, and Monte Carlo.
  const double simpson = 2 * kPi * oracle::simpson([](double p) { return std::cos(p) * std::cos(p) * std::sin(p); }, 0, kPi, 2000);
  CHECK(lq_norm(SphericalWeight::zonal_power(1.0), 2.0, 3, quad) == doctest::Approx(std::sqrt(4 * kPi / 3)).epsilon(1e-13));
  CHECK(simpson == doctest::Approx(4 * kPi / 3).epsilon(1e-10));
  const auto mc = oracle::sphere_integral(3, [](double p) { return std::cos(p) * std::cos(p); }, 200000, 1);
  CHECK(mc.within(4 * kPi / 3, 3.0));
}

TEST_CASE("lq_norm agrees with Monte-Carlo sphere sampling on the catalog") {
  std::uint64_t salt = 100;
  auto weights = catalog::weights();
  weights.push_back(catalog::signed_weight());
  for (const auto& g : weights) {
    for (int N : {2, 3, 5}) {
      for (double q : {1.0, 2.0, 2.5}) {
        const double norm = lq_norm(g, q, N, quad);
        const auto mc = oracle::sphere_integral(N, [&](double p) { return std::pow(std::abs(g(p)), q); }, 100000, ++salt);
        INFO(g.name() << " N=" << N << " q=" << q << " mc=" << mc.mean << " +- " << mc.stderr_);
        CHECK(mc.within(std::pow(norm, q), 3.0));
      }
    }
  }
}

TEST_CASE("lq_norm is monotone in the weight") {
  const std::vector<std::pair<SphericalWeight, SphericalWeight>> pairs{
      {SphericalWeight::cap(kPi / 3), SphericalWeight::cap(kPi / 2)},
      {SphericalWeight::zonal_power(2.0), SphericalWeight::zonal_power(0.5)},
      {SphericalWeight::constant(1.0), SphericalWeight::constant(2.5)},
      {SphericalWeight::cap(kPi / 2), SphericalWeight::constant(1.0)},
      {SphericalWeight::zonal_power(2.0), SphericalWeight::constant(1.0)},
  };
  for (const auto& [lo, hi] : pairs) {
    for (int N : {2, 4, 7}) {
      for (double q : {1.0, 2.0, 5.0}) CHECK(lq_norm(lo, q, N, quad) <= lq_norm(hi, q, N, quad));
    }
  }
}

TEST_CASE("sampled weights") {
  const auto g = SphericalWeight::sampled({0.0, 1.0, 2.0, kPi}, {2.0, 1.0, 0.5, 0.0});
  CHECK(g(0.5) == doctest::Approx(1.5));
  CHECK(g.nonneg());
  CHECK_FALSE(catalog::signed_weight().nonneg());
  CHECK(code_of([] { SphericalWeight::sampled({0.0, 1.0}, {1.0, 1.0}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { SphericalWeight::sampled({0.0, 2.0, 1.0, kPi}, {1, 1, 1, 1}); }) == ErrorCode::InvalidArgument);

  const char* path = "sphere_weight_table.csv";
  {
    std::ofstream out(path);
    out.precision(17);
    out << "angle,value\n# comment\n0,2\n1,1\n2,0.5\n" << kPi << ",0\n";
  }
  const auto loaded = SphericalWeight::load_csv(path);
  CHECK(loaded.angles().size() == 4);
  CHECK(lq_norm(loaded, 2.0, 3, quad) == doctest::Approx(lq_norm(g, 2.0, 3, quad)).epsilon(1e-9));
  std::remove(path);
  CHECK(code_of([] { SphericalWeight::load_csv("/nonexistent/weights.csv"); }) == ErrorCode::IoError);
}

TEST_CASE("mu_gn examples") {
  CHECK(mu_gn(1.0, 5, 3.0) == 1.0);
  CHECK(mu_gn(10.0, 5, 4.0) == doctest::Approx(2.0));
  CHECK(mu_gn(0.0, 5, 3.0) == 0.0);
  CHECK(mu_gn(0.0, 3, 7.0) == 0.0);
  CHECK(code_of([] { mu_gn(5.0, 5, 3.0); }) == ErrorCode::MuUndefined);
  CHECK(code_of([] { mu_gn(1.0, 5, 4.5); }) == ErrorCode::ExponentOutOfRange);
  CHECK(code_of([] { mu_gn(1.0, 5, 2.0); }) == ErrorCode::ExponentOutOfRange);
}

TEST_CASE("mu_gn at the critical exponent is non-decreasing and concave") {
  for (int N : {4, 5, 8}) {
    const double t = 2.0 * (N - 1) / (N - 3);
    std::vector<double> v;
    for (int i = 0; i <= 200; ++i) v.push_back(mu_gn(0.05 * i, N, t));
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] >= v[i - 1]);
    for (std::size_t i = 1; i + 1 < v.size(); ++i) CHECK(v[i - 1] + v[i + 1] <= 2 * v[i] + 1e-12);
  }
}
