#include "hardylab/catalog.hpp"

#include <numbers>

namespace hardylab::catalog {

namespace {

constexpr double kPi = std::numbers::pi;

RadialProfile ring() {
  return RadialProfile::log_sampled(
      [](double r) { return (0.2 + r) * (2.0 - r) * (2.0 - r) / 4.0; }, 0.01, 2.0, 40);
}

}  // namespace

std::vector<SphericalWeight> weights() {
  return {
      SphericalWeight::constant(1.0),
      SphericalWeight::constant(2.5),
      SphericalWeight::cap(kPi / 2),
      SphericalWeight::cap(kPi / 3),
      SphericalWeight::zonal_power(2.0),
      SphericalWeight::zonal_power(0.5),
      SphericalWeight::sampled({0.0, 1.0, 2.0, kPi}, {2.0, 1.0, 0.5, 0.0}),
  };
}

SphericalWeight signed_weight() {
  return SphericalWeight::sampled({0.0, 1.0, 2.0, kPi}, {1.5, 0.5, -0.5, -1.0});
}

std::vector<TestFunction> local_tests() {
  return {
      {RadialProfile::tent(1.0), AngularFactor::one()},
      {RadialProfile::tent(2.0), AngularFactor::cos()},
      {RadialProfile::truncated_power(-0.5, 0.01, 1.0, 1.0), AngularFactor::one()},
      {RadialProfile::exp_bump(0.5, 6.0), AngularFactor::one()},
      {RadialProfile::tent(1.0), AngularFactor::cap_smooth(kPi / 3, 0.5)},
      {RadialProfile::exp_bump(1.0, 10.0), AngularFactor::cos()},
      {RadialProfile::truncated_power(-1.0, 0.05, 2.0, 2.0), AngularFactor::cap_smooth(kPi / 2, 1.0)},
      {ring(), AngularFactor::one()},
  };
}

std::vector<RadialProfile> radial_profiles() {
  return {
      RadialProfile::tent(1.0),
      RadialProfile::tent(2.0),
      RadialProfile::truncated_power(-0.5, 0.01, 1.0, 1.0),
      RadialProfile::exp_bump(0.5, 6.0),
      RadialProfile::exp_bump(1.0, 10.0),
      RadialProfile::truncated_power(-1.0, 0.05, 2.0, 2.0),
      RadialProfile::truncated_power(-0.25, 0.1, 0.5, 0.5),
      ring(),
  };
}

}  // namespace hardylab::catalog
