#include "hardylab/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "hardylab/error.hpp"

namespace hardylab {

HomogeneousWeight HomogeneousWeight::make(SphericalWeight g, double degree) {
  if (!g.nonneg()) fail(ErrorCode::NonnegRequired, "homogeneous weight needs g >= 0");
  if (!(std::isfinite(degree) && degree > 0.0)) {
    fail(ErrorCode::InvalidArgument, "homogeneous weight degree must be > 0");
  }
  return HomogeneousWeight{std::move(g), degree};
}

SampledField SampledField::make(std::vector<double> values, std::vector<double> measures) {
  if (measures.empty()) measures.assign(values.size(), 1.0);
  if (measures.size() != values.size()) {
    fail(ErrorCode::ShapeMismatch, "values and measures differ in length");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      fail(ErrorCode::NonnegRequired, "sampled field values must be finite and >= 0");
    }
    if (!std::isfinite(measures[i]) || measures[i] <= 0.0) {
      fail(ErrorCode::InvalidArgument, "cell measures must be > 0");
    }
  }
  SampledField f;
  f.values_ = std::move(values);
  f.measures_ = std::move(measures);
  return f;
}

SampledField SampledField::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path);
  std::vector<double> values;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto comma = line.find(',');
    if (comma != std::string::npos) line.erase(comma);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream is(line);
    double v = 0.0;
    if (!(is >> v)) {
      if (first) {
        first = false;
        continue;
      }
      fail(ErrorCode::IoError, path + ": bad value '" + line + "'");
    }
    first = false;
    values.push_back(v);
  }
  return make(std::move(values));
}

double SampledField::superlevel(double t) const {
  double m = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] > t) m += measures_[i];
  }
  return m;
}

namespace {

// The closed forms only need int g^{N/d} with N/d >= 1; local integrability of
// the weight (N > d) matters for the inequalities, not for the level sets.
void check_degree(double d, int N) {
  if (!(N >= d)) fail(ErrorCode::RegimeViolation, "N >= degree violated");
}

}  // namespace

double superlevel_measure(const HomogeneousWeight& w, double t, int N,
                          const SphereQuadrature& quad) {
  if (!(std::isfinite(t) && t > 0.0)) fail(ErrorCode::InvalidLevel, "level must be > 0");
  check_degree(w.degree, N);
  const double e = N / w.degree;
  const double norm = lq_norm(w.g, e, N, quad);
  return std::pow(t, -e) / N * std::pow(norm, e);
}

double rearranged_coefficient(const HomogeneousWeight& w, int N, const SphereQuadrature& quad) {
  if (!w.g.nonneg()) fail(ErrorCode::NonnegRequired, "rearrangement needs g >= 0");
  check_degree(w.degree, N);
  const double norm = lq_norm(w.g, N / w.degree, N, quad);
  return norm / std::pow(surface_measure(N), w.degree / N);
}

double radial_superlevel_measure(double A, double degree, double t, int N) {
  if (!(t > 0.0)) fail(ErrorCode::InvalidLevel, "level must be > 0");
  return surface_measure(N) / N * std::pow(A / t, N / degree);
}

SampledField decreasing_rearrangement(const SampledField& f) {
  std::vector<std::size_t> idx(f.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return f.values()[a] > f.values()[b]; });
  std::vector<double> v(f.size());
  std::vector<double> m(f.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    v[i] = f.values()[idx[i]];
    m[i] = f.measures()[idx[i]];
  }
  return SampledField::make(std::move(v), std::move(m));
}

double hardy_littlewood_gap(const SampledField& u, const SampledField& v) {
  if (u.size() != v.size() || u.measures() != v.measures()) {
    fail(ErrorCode::ShapeMismatch, "fields have different cell structures");
  }
  double direct = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    direct += u.values()[i] * v.values()[i] * u.measures()[i];
  }
  // Merge the two step functions on [0, total measure].
  const SampledField us = decreasing_rearrangement(u);
  const SampledField vs = decreasing_rearrangement(v);
  double rearranged = 0.0;
  std::size_t i = 0, j = 0;
  double left_u = us.size() ? us.measures()[0] : 0.0;
  double left_v = vs.size() ? vs.measures()[0] : 0.0;
  while (i < us.size() && j < vs.size()) {
    const double step = std::min(left_u, left_v);
    rearranged += us.values()[i] * vs.values()[j] * step;
    left_u -= step;
    left_v -= step;
    if (left_u <= 0.0 && ++i < us.size()) left_u = us.measures()[i];
    if (left_v <= 0.0 && ++j < vs.size()) left_v = vs.measures()[j];
  }
  return rearranged - direct;
}

RadialProfile radial_rearrangement(const RadialProfile& f, int N, int cells) {
  if (N < 1 || cells < 2) fail(ErrorCode::InvalidArgument, "radial rearrangement needs N >= 1, cells >= 2");
  if (!f.compact()) fail(ErrorCode::SupportRequired, "radial rearrangement needs compact support");
  const double R = f.support();
  std::vector<double> vals(cells);
  std::vector<double> r(cells + 1);
  for (int i = 0; i < cells; ++i) {
    const double mid = R * std::pow((i + 0.5) / cells, 1.0 / N);
    vals[i] = std::abs(f.value(mid));
    r[i] = R * std::pow((i + 0.5) / cells, 1.0 / N);
  }
  std::sort(vals.begin(), vals.end(), std::greater<>());
  r[cells] = R;
  vals.push_back(0.0);
  return RadialProfile::sampled(std::move(r), std::move(vals));
}

}  // namespace hardylab
