#pragma once

// Run configurations for the command-line front end: a JSON document naming a
// command, a regime and the weights/tests to use. Parsing validates every
// regime condition before anything is computed.

#include <optional>
#include <string>
#include <vector>

#include "hardylab/profiles.hpp"
#include "hardylab/sphere.hpp"

namespace hardylab {

enum class Command { Constant, Verify, Sweep, Lambda, Rearrange };

std::string_view command_name(Command c);
std::optional<Command> parse_command(std::string_view name);

/// Zonal weight descriptor. kind: "constant" (param = c), "cap" (param = phi0),
/// "zonal-power" (param = k), "sampled" (angles/values).
struct WeightSpec {
  std::string kind = "constant";
  double param = 1.0;
  std::vector<double> angles;
  std::vector<double> values;
  double scale = 1.0;

  SphericalWeight build() const;
  static WeightSpec from(const SphericalWeight& g);
  bool operator==(const WeightSpec&) const = default;
};

/// Radial profile descriptor. kind: "tent" [R], "truncated-power" [a, r0, R, w],
/// "exp-bump" [scale, R], "sampled" (r/v tables).
struct RadialSpec {
  std::string kind = "tent";
  std::vector<double> params{1.0};
  std::vector<double> r;
  std::vector<double> v;
  double amplitude = 1.0;
  double dilation = 1.0;

  RadialProfile build() const;
  static RadialSpec from(const RadialProfile& f);
  bool operator==(const RadialSpec&) const = default;
};

/// kind: "one", "cos", "cap-smooth" (phi0, ramp).
struct AngularSpec {
  std::string kind = "one";
  double phi0 = 0.0;
  double ramp = 0.0;

  AngularFactor build() const;
  static AngularSpec from(const AngularFactor& h);
  bool operator==(const AngularSpec&) const = default;
};

struct TestSpec {
  RadialSpec radial;
  AngularSpec angular;

  TestFunction build() const { return {radial.build(), angular.build()}; }
  bool operator==(const TestSpec&) const = default;
};

/// The one defaults table. Every field is echoed into report metadata.
struct Defaults {
  int angular_nodes = 32;
  double angular_tolerance = 1e-13;
  double radial_tolerance = 1e-12;
  double radial_ratio = 2.0;
  double seminorm_tolerance = 1e-10;
  int seminorm_radial_nodes = 16;
  int seminorm_kernel_nodes = 12;
  double slack_tolerance = 1e-9;
  double sweep_outer_radius = 1.0;
  int sweep_steps = 8;
  double sweep_monotone_tolerance = 1e-3;
  double rearrange_tolerance = 1e-10;
  std::vector<double> rearrange_levels{0.5, 1.0, 2.0};

  bool operator==(const Defaults&) const = default;
};

struct RunConfig {
  Command command = Command::Constant;
  /// constant: ckn, sharp-l2, homogeneous, fractional, admissible-q, gamma0;
  /// verify: weighted-lq, sharp-l2, homogeneous, fractional;
  /// sweep: homogeneous, fractional, hardy-1d.
  std::vector<std::string> theorems;
  std::vector<std::string> cases;  ///< sharp-l2: case1..case3
  int N = 0;
  std::optional<double> p;
  std::optional<double> alpha;
  std::optional<double> s;
  std::optional<double> q;       ///< sphere exponent at p = N - 1
  std::optional<double> beta;    ///< hardy-1d sweep
  std::optional<double> degree;  ///< rearrange
  std::optional<double> empirical_constant;
  std::vector<WeightSpec> weights;
  std::vector<TestSpec> tests;
  std::vector<RadialSpec> profiles;  ///< fractional verify
  std::vector<double> field_u;       ///< rearrange: optional sampled pair
  std::vector<double> field_v;
  std::string sweep_family = "power";
  Defaults defaults;
  std::string output_path;
  std::string format = "csv";

  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates. Errors carry the violated condition, e.g.
/// "regime-violation: N > p + alpha violated (...)".
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical JSON with every field explicit; parse_config inverts it.
std::string serialize_config(const RunConfig& config);

}  // namespace hardylab
