#pragma once

// Named catalogs of weights and test functions used by the CLI ("catalog")
// and by the verification suites.

#include <vector>

#include "hardylab/profiles.hpp"
#include "hardylab/sphere.hpp"

namespace hardylab::catalog {

/// Nonnegative zonal weights: constants, caps, |cos|^k and a sampled table.
std::vector<SphericalWeight> weights();

/// A sampled weight that changes sign (admissible only where g may be signed).
SphericalWeight signed_weight();

/// Separated test functions f(r) h(phi) for the gradient inequalities.
std::vector<TestFunction> local_tests();

/// Radial profiles for the fractional inequality.
std::vector<RadialProfile> radial_profiles();

}  // namespace hardylab::catalog
