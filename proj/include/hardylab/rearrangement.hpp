#pragma once

// Symmetric decreasing rearrangement: closed forms for homogeneous weights
// g(x/|x|)/|x|^d and a discrete rearrangement of sampled fields.

#include <string>
#include <vector>

#include "hardylab/profiles.hpp"
#include "hardylab/sphere.hpp"

namespace hardylab {

/// g(x/|x|) / |x|^degree with g >= 0 and degree > 0. The closed forms below
/// need N >= degree.
struct HomogeneousWeight {
  SphericalWeight g;
  double degree;

  static HomogeneousWeight make(SphericalWeight g, double degree);
};

/// Nonnegative values on cells of positive measure.
class SampledField {
 public:
  /// Uniform unit cells when `measures` is empty.
  static SampledField make(std::vector<double> values, std::vector<double> measures = {});
  /// Single-column CSV of values (uniform cells); '#' comments and a
  /// non-numeric header line are skipped.
  static SampledField load_csv(const std::string& path);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& measures() const { return measures_; }
  std::size_t size() const { return values_.size(); }
  /// Total measure of cells with value > t.
  double superlevel(double t) const;

 private:
  std::vector<double> values_;
  std::vector<double> measures_;
};

/// |{y : g(y/|y|)/|y|^d > t}| = t^{-N/d} / N * int g^{N/d}.
double superlevel_measure(const HomogeneousWeight& w, double t, int N,
                          const SphereQuadrature& quad);

/// A with (g(x/|x|)/|x|^d)^* = A / |x|^d:
/// A = (int g^{N/d})^{d/N} / |S^{N-1}|^{d/N}.
double rearranged_coefficient(const HomogeneousWeight& w, int N, const SphereQuadrature& quad);

/// Superlevel measure of the radial weight A/|x|^d at level t.
double radial_superlevel_measure(double A, double degree, double t, int N);

/// Values sorted non-increasing, measures carried along.
SampledField decreasing_rearrangement(const SampledField& f);

/// int u* v* - int u v over the common cell structure, with u*, v* the
/// decreasing rearrangements as step functions of the cumulative measure.
double hardy_littlewood_gap(const SampledField& u, const SampledField& v);

/// Radial decreasing rearrangement of |f| in R^N: |f| is sampled on `cells`
/// shells of equal volume over its support and the samples are sorted.
RadialProfile radial_rearrangement(const RadialProfile& f, int N, int cells);

}  // namespace hardylab
