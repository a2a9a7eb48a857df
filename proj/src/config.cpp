#include "hardylab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hardylab/catalog.hpp"
#include "hardylab/error.hpp"
#include "hardylab/fractional.hpp"
#include "hardylab/quotients.hpp"
#include "hardylab/rearrangement.hpp"
#include "hardylab/regimes.hpp"

namespace hardylab {

using nlohmann::json;

namespace {

[[noreturn]] void config_fail(const std::string& msg) { fail(ErrorCode::ConfigError, msg); }

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.contains(key)) config_fail("unknown field '" + key + "' in " + where);
  }
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) config_fail("missing required field '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number()) config_fail("field '" + std::string(key) + "' in " + where + " must be a number");
  double x = v.get<double>();
  if (!std::isfinite(x)) config_fail("field '" + std::string(key) + "' in " + where + " must be finite");
  return x;
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::optional<double> optional_number(const json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  return number(obj, key, "config");
}

int integer(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) config_fail("missing required field '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_number_integer()) config_fail("field '" + std::string(key) + "' in " + where + " must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) config_fail("missing required field '" + std::string(key) + "' in " + where);
  const json& v = obj.at(key);
  if (!v.is_array()) config_fail("field '" + std::string(key) + "' in " + where + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) config_fail("field '" + std::string(key) + "' in " + where + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string text(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) config_fail("missing required field '" + std::string(key) + "' in " + where);
  if (!obj.at(key).is_string()) config_fail("field '" + std::string(key) + "' in " + where + " must be a string");
  return obj.at(key).get<std::string>();
}

std::vector<std::string> texts(const json& obj, const char* single, const char* plural) {
  std::vector<std::string> out;
  if (obj.contains(single)) out.push_back(text(obj, single, "config"));
  if (obj.contains(plural)) {
    const json& v = obj.at(plural);
    if (!v.is_array()) config_fail("field '" + std::string(plural) + "' must be an array of strings");
    for (const auto& x : v) {
      if (!x.is_string()) config_fail("field '" + std::string(plural) + "' must be an array of strings");
      out.push_back(x.get<std::string>());
    }
  }
  return out;
}

// Descriptor lists accept a single object, an array, or the string "catalog"
// (alone or as an array element).
template <class Spec, class FromCatalog, class Parse>
std::vector<Spec> descriptor_list(const json& obj, const char* single, const char* plural,
                                  FromCatalog catalog, Parse parse) {
  std::vector<Spec> out;
  auto add = [&](const json& item) {
    if (item.is_string()) {
      auto extra = catalog(item.get<std::string>());
      out.insert(out.end(), extra.begin(), extra.end());
    } else {
      out.push_back(parse(item));
    }
  };
  for (const char* key : {single, plural}) {
    if (!obj.contains(key)) continue;
    const json& v = obj.at(key);
    if (v.is_array()) {
      for (const auto& item : v) add(item);
    } else {
      add(v);
    }
  }
  return out;
}

WeightSpec parse_weight(const json& j) {
  const std::string where = "weight";
  if (!j.is_object()) config_fail("weight descriptor must be an object or \"catalog\"");
  WeightSpec w;
  w.kind = text(j, "kind", where);
  if (w.kind == "constant") {
    reject_unknown(j, {"kind", "c", "scale"}, where);
    w.param = number_or(j, "c", 1.0, where);
  } else if (w.kind == "cap") {
    reject_unknown(j, {"kind", "phi0", "scale"}, where);
    w.param = number(j, "phi0", where);
  } else if (w.kind == "zonal-power") {
    reject_unknown(j, {"kind", "k", "scale"}, where);
    w.param = number(j, "k", where);
  } else if (w.kind == "sampled") {
    reject_unknown(j, {"kind", "angles", "values", "csv", "scale"}, where);
    w.param = 0.0;
    if (j.contains("csv")) {
      SphericalWeight table = SphericalWeight::load_csv(text(j, "csv", where));
      w.angles = table.angles();
      w.values = table.values();
    } else {
      w.angles = numbers(j, "angles", where);
      w.values = numbers(j, "values", where);
    }
  } else {
    config_fail("unknown weight kind '" + w.kind + "'");
  }
  w.scale = number_or(j, "scale", 1.0, where);
  w.build();  // validates the parameters
  return w;
}

json weight_json(const WeightSpec& w) {
  json j{{"kind", w.kind}};
  if (w.kind == "constant") j["c"] = w.param;
  if (w.kind == "cap") j["phi0"] = w.param;
  if (w.kind == "zonal-power") j["k"] = w.param;
  if (w.kind == "sampled") {
    j["angles"] = w.angles;
    j["values"] = w.values;
  }
  j["scale"] = w.scale;
  return j;
}

RadialSpec parse_radial(const json& j) {
  const std::string where = "radial profile";
  if (!j.is_object()) config_fail("radial descriptor must be an object");
  RadialSpec f;
  f.kind = text(j, "kind", where);
  if (f.kind == "tent") {
    reject_unknown(j, {"kind", "R", "amplitude", "dilation"}, where);
    f.params = {number_or(j, "R", 1.0, where)};
  } else if (f.kind == "truncated-power") {
    reject_unknown(j, {"kind", "a", "r0", "R", "w", "amplitude", "dilation"}, where);
    f.params = {number(j, "a", where), number(j, "r0", where), number_or(j, "R", 1.0, where),
                number_or(j, "w", 1.0, where)};
  } else if (f.kind == "exp-bump") {
    reject_unknown(j, {"kind", "scale", "R", "amplitude", "dilation"}, where);
    f.params = {number(j, "scale", where), number(j, "R", where)};
  } else if (f.kind == "sampled") {
    reject_unknown(j, {"kind", "r", "v", "amplitude", "dilation"}, where);
    f.params = {};
    f.r = numbers(j, "r", where);
    f.v = numbers(j, "v", where);
  } else {
    config_fail("unknown radial profile kind '" + f.kind + "'");
  }
  f.amplitude = number_or(j, "amplitude", 1.0, where);
  f.dilation = number_or(j, "dilation", 1.0, where);
  f.build();
  return f;
}

json radial_json(const RadialSpec& f) {
  json j{{"kind", f.kind}};
  if (f.kind == "tent") j["R"] = f.params[0];
  if (f.kind == "truncated-power") {
    j["a"] = f.params[0];
    j["r0"] = f.params[1];
    j["R"] = f.params[2];
    j["w"] = f.params[3];
  }
  if (f.kind == "exp-bump") {
    j["scale"] = f.params[0];
    j["R"] = f.params[1];
  }
  if (f.kind == "sampled") {
    j["r"] = f.r;
    j["v"] = f.v;
  }
  j["amplitude"] = f.amplitude;
  j["dilation"] = f.dilation;
  return j;
}

AngularSpec parse_angular(const json& j) {
  const std::string where = "angular factor";
  AngularSpec h;
  if (j.is_string()) {
    h.kind = j.get<std::string>();
  } else if (j.is_object()) {
    h.kind = text(j, "kind", where);
    if (h.kind == "cap-smooth") {
      reject_unknown(j, {"kind", "phi0", "ramp"}, where);
      h.phi0 = number(j, "phi0", where);
      h.ramp = number(j, "ramp", where);
    } else {
      reject_unknown(j, {"kind"}, where);
    }
  } else {
    config_fail("angular descriptor must be a string or an object");
  }
  if (h.kind != "one" && h.kind != "cos" && h.kind != "cap-smooth") {
    config_fail("unknown angular factor kind '" + h.kind + "'");
  }
  if (h.kind == "cap-smooth" && !j.is_object()) config_fail("cap-smooth needs phi0 and ramp");
  h.build();
  return h;
}

json angular_json(const AngularSpec& h) {
  json j{{"kind", h.kind}};
  if (h.kind == "cap-smooth") {
    j["phi0"] = h.phi0;
    j["ramp"] = h.ramp;
  }
  return j;
}

TestSpec parse_test(const json& j) {
  if (!j.is_object()) config_fail("test descriptor must be an object or \"catalog\"");
  reject_unknown(j, {"radial", "angular"}, "test");
  if (!j.contains("radial")) config_fail("missing required field 'radial' in test");
  TestSpec t;
  t.radial = parse_radial(j.at("radial"));
  if (j.contains("angular")) t.angular = parse_angular(j.at("angular"));
  return t;
}

std::vector<WeightSpec> weight_catalog(const std::string& name) {
  std::vector<WeightSpec> out;
  if (name != "catalog" && name != "catalog-signed") config_fail("unknown weight catalog '" + name + "'");
  for (const auto& g : catalog::weights()) out.push_back(WeightSpec::from(g));
  if (name == "catalog-signed") out.push_back(WeightSpec::from(catalog::signed_weight()));
  return out;
}

std::vector<TestSpec> test_catalog(const std::string& name) {
  if (name != "catalog") config_fail("unknown test catalog '" + name + "'");
  std::vector<TestSpec> out;
  for (const auto& u : catalog::local_tests()) {
    out.push_back({RadialSpec::from(u.radial), AngularSpec::from(u.angular)});
  }
  return out;
}

std::vector<RadialSpec> profile_catalog(const std::string& name) {
  if (name != "catalog") config_fail("unknown profile catalog '" + name + "'");
  std::vector<RadialSpec> out;
  for (const auto& f : catalog::radial_profiles()) out.push_back(RadialSpec::from(f));
  return out;
}

void parse_defaults(const json& root, Defaults& d) {
  if (root.contains("quadrature")) {
    const json& q = root.at("quadrature");
    if (!q.is_object()) config_fail("'quadrature' must be an object");
    reject_unknown(q,
                   {"angular_nodes", "angular_tolerance", "radial_tolerance", "radial_ratio",
                    "seminorm_tolerance", "seminorm_radial_nodes", "seminorm_kernel_nodes",
                    "slack_tolerance"},
                   "quadrature");
    const std::string w = "quadrature";
    if (q.contains("angular_nodes")) d.angular_nodes = integer(q, "angular_nodes", w);
    d.angular_tolerance = number_or(q, "angular_tolerance", d.angular_tolerance, w);
    d.radial_tolerance = number_or(q, "radial_tolerance", d.radial_tolerance, w);
    d.radial_ratio = number_or(q, "radial_ratio", d.radial_ratio, w);
    d.seminorm_tolerance = number_or(q, "seminorm_tolerance", d.seminorm_tolerance, w);
    if (q.contains("seminorm_radial_nodes")) d.seminorm_radial_nodes = integer(q, "seminorm_radial_nodes", w);
    if (q.contains("seminorm_kernel_nodes")) d.seminorm_kernel_nodes = integer(q, "seminorm_kernel_nodes", w);
    d.slack_tolerance = number_or(q, "slack_tolerance", d.slack_tolerance, w);
  }
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    if (!s.is_object()) config_fail("'sweep' must be an object");
    reject_unknown(s, {"family", "outer_radius", "steps", "monotone_tolerance"}, "sweep");
    d.sweep_outer_radius = number_or(s, "outer_radius", d.sweep_outer_radius, "sweep");
    if (s.contains("steps")) d.sweep_steps = integer(s, "steps", "sweep");
    d.sweep_monotone_tolerance = number_or(s, "monotone_tolerance", d.sweep_monotone_tolerance, "sweep");
  }
  if (root.contains("rearrange")) {
    const json& r = root.at("rearrange");
    if (!r.is_object()) config_fail("'rearrange' must be an object");
    reject_unknown(r, {"levels", "tolerance", "u", "v"}, "rearrange");
    if (r.contains("levels")) d.rearrange_levels = numbers(r, "levels", "rearrange");
    d.rearrange_tolerance = number_or(r, "tolerance", d.rearrange_tolerance, "rearrange");
  }
  if (d.angular_nodes < 8 || d.angular_nodes > 256) config_fail("quadrature.angular_nodes must lie in [8, 256]");
  if (!(d.angular_tolerance > 0.0) || !(d.radial_tolerance > 0.0) || !(d.seminorm_tolerance > 0.0) ||
      !(d.slack_tolerance >= 0.0) || !(d.rearrange_tolerance >= 0.0) || !(d.sweep_monotone_tolerance >= 0.0)) {
    config_fail("tolerances must be positive");
  }
  if (!(d.radial_ratio > 1.0)) config_fail("quadrature.radial_ratio must be > 1");
  if (d.seminorm_radial_nodes < 4 || d.seminorm_radial_nodes > 128 || d.seminorm_kernel_nodes < 4 ||
      d.seminorm_kernel_nodes > 128) {
    config_fail("seminorm node counts must lie in [4, 128]");
  }
  if (d.sweep_steps < 1 || d.sweep_steps > 20) config_fail("sweep.steps must lie in [1, 20]");
}

double need(const std::optional<double>& v, const char* name, std::string_view for_what) {
  if (!v) config_fail("missing required field '" + std::string(name) + "' for " + std::string(for_what));
  return *v;
}

void require_nonneg_weights(const RunConfig& c, std::string_view for_what) {
  for (const auto& w : c.weights) {
    if (!w.build().nonneg()) {
      fail(ErrorCode::NonnegRequired, std::string(for_what) + " needs g >= 0 (weight " + w.build().name() + ")");
    }
  }
}

std::optional<Case13Id> parse_case(std::string_view name) {
  if (name == "case1") return Case13Id::Case1;
  if (name == "case2") return Case13Id::Case2;
  if (name == "case3") return Case13Id::Case3;
  return std::nullopt;
}

void validate_sharp_l2(RunConfig& c) {
  if (!c.p) c.p = 2.0;
  if (*c.p != 2.0) fail(ErrorCode::RegimeViolation, "p = 2 violated (sharp-l2 needs p = 2)");
  double alpha = need(c.alpha, "alpha", "sharp-l2");
  Regime::local(c.N, 2.0, alpha);
  if (c.cases.empty()) c.cases.emplace_back(case13_name(classify_case13(c.N, alpha).case_id));
  for (const auto& name : c.cases) {
    auto id = parse_case(name);
    if (!id) config_fail("unknown case '" + name + "'");
    // The three-term form can be checked for any gamma0 > 0; only the
    // constant itself needs gamma0 > 1.
    if (c.command == Command::Verify && *id == Case13Id::Case2) gamma0_ratio(c.N, alpha);
    else resolve_case13(c.N, alpha, *id);
  }
}

void validate(RunConfig& c) {
  if (c.N < 1) fail(ErrorCode::RegimeViolation, "N >= 1 violated");
  if (c.format != "csv" && c.format != "json") config_fail("format must be csv or json");
  auto has = [&](std::string_view t) { return std::find(c.theorems.begin(), c.theorems.end(), t) != c.theorems.end(); };
  std::set<std::string> allowed;
  switch (c.command) {
    case Command::Constant:
      allowed = {"ckn", "sharp-l2", "homogeneous", "fractional", "admissible-q", "gamma0"};
      break;
    case Command::Verify: allowed = {"weighted-lq", "sharp-l2", "homogeneous", "fractional"}; break;
    case Command::Sweep: allowed = {"homogeneous", "fractional", "hardy-1d"}; break;
    case Command::Lambda:
    case Command::Rearrange: break;
  }
  if (c.command == Command::Lambda || c.command == Command::Rearrange) {
    if (!c.theorems.empty()) config_fail("'theorem' is not used by " + std::string(command_name(c.command)));
  } else {
    if (c.theorems.empty()) {
      config_fail("missing required field 'theorem' for " + std::string(command_name(c.command)));
    }
    for (const auto& t : c.theorems) {
      if (!allowed.contains(t)) {
        config_fail("unknown theorem '" + t + "' for " + std::string(command_name(c.command)));
      }
    }
  }
  if (!c.cases.empty() && !has("sharp-l2")) config_fail("'case' only applies to sharp-l2");
  if (c.weights.empty()) c.weights.push_back(WeightSpec{});

  const bool verify = c.command == Command::Verify;
  if (has("ckn") || has("homogeneous") || has("weighted-lq")) {
    double p = need(c.p, "p", "the local inequality");
    double alpha = need(c.alpha, "alpha", "the local inequality");
    Regime::local(c.N, p, alpha);
    if ((has("homogeneous")) && !(p + alpha > 0.0)) {
      fail(ErrorCode::RegimeViolation, "p + alpha > 0 violated");
    }
  }
  if (has("homogeneous")) require_nonneg_weights(c, "homogeneous");
  if (has("weighted-lq")) admissible_q(c.N, *c.p, c.q);
  if (has("sharp-l2")) validate_sharp_l2(c);
  if (has("fractional") || c.command == Command::Lambda) {
    FracRegime::make(c.N, need(c.s, "s", "the fractional inequality"),
                     need(c.p, "p", "the fractional inequality"));
  }
  if (has("fractional")) require_nonneg_weights(c, "fractional");
  if (has("admissible-q")) admissible_q(c.N, need(c.p, "p", "admissible-q"), c.q);
  if (has("gamma0")) gamma0(c.N, need(c.alpha, "alpha", "gamma0"));
  if (has("hardy-1d")) {
    double p = need(c.p, "p", "hardy-1d");
    double beta = need(c.beta, "beta", "hardy-1d");
    if (!(p > 1.0)) fail(ErrorCode::RegimeViolation, "p > 1 violated");
    if (!(beta > p - 1.0)) fail(ErrorCode::RegimeViolation, "beta > p - 1 violated");
  }
  if (c.command == Command::Sweep) SweepFamily::make(c.sweep_family, c.defaults.sweep_outer_radius, c.defaults.sweep_steps);

  if (verify) {
    const bool local = has("weighted-lq") || has("sharp-l2") || has("homogeneous");
    if (local && c.tests.empty()) c.tests = test_catalog("catalog");
    if (has("fractional") && c.profiles.empty()) c.profiles = profile_catalog("catalog");
    if (!local && !c.tests.empty()) config_fail("'tests' only applies to gradient inequalities");
    if (!has("fractional") && !c.profiles.empty()) config_fail("'profiles' only applies to fractional");
    if (c.empirical_constant && !has("weighted-lq")) config_fail("'empirical_constant' only applies to weighted-lq");
  } else if (!c.tests.empty() || !c.profiles.empty()) {
    config_fail("'tests'/'profiles' only apply to verify");
  }

  if (c.command == Command::Rearrange) {
    if (!c.degree) {
      if (c.p && c.alpha) c.degree = *c.p + *c.alpha;
      else if (c.p && c.s) c.degree = *c.p * *c.s;
    }
    double d = need(c.degree, "degree", "rearrange");
    if (!(d > 0.0)) fail(ErrorCode::RegimeViolation, "degree > 0 violated");
    if (!(c.N >= d)) fail(ErrorCode::RegimeViolation, "N >= degree violated");
    require_nonneg_weights(c, "rearrange");
    if (c.field_u.size() != c.field_v.size()) {
      fail(ErrorCode::ShapeMismatch, "rearrange fields u and v must have the same length");
    }
    for (const auto& vals : {c.field_u, c.field_v}) {
      if (!vals.empty()) SampledField::make(vals);
    }
    for (double t : c.defaults.rearrange_levels) {
      if (!(t > 0.0)) fail(ErrorCode::InvalidLevel, "rearrange levels must be > 0");
    }
  } else if (!c.field_u.empty() || c.degree) {
    config_fail("'degree' and fields only apply to rearrange");
  }
}

}  // namespace

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Constant: return "constant";
    case Command::Verify: return "verify";
    case Command::Sweep: return "sweep";
    case Command::Lambda: return "lambda";
    case Command::Rearrange: return "rearrange";
  }
  return "?";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::Constant, Command::Verify, Command::Sweep, Command::Lambda, Command::Rearrange}) {
    if (command_name(c) == name) return c;
  }
  return std::nullopt;
}

SphericalWeight WeightSpec::build() const {
  SphericalWeight g = SphericalWeight::constant(1.0);
  if (kind == "constant") g = SphericalWeight::constant(param);
  else if (kind == "cap") g = SphericalWeight::cap(param);
  else if (kind == "zonal-power") g = SphericalWeight::zonal_power(param);
  else if (kind == "sampled") g = SphericalWeight::sampled(angles, values);
  else config_fail("unknown weight kind '" + kind + "'");
  return scale == 1.0 ? g : g.scaled(scale);
}

WeightSpec WeightSpec::from(const SphericalWeight& g) {
  WeightSpec w;
  using K = SphericalWeight::Kind;
  switch (g.kind()) {
    case K::Constant: w.kind = "constant"; break;
    case K::CapIndicator: w.kind = "cap"; break;
    case K::ZonalPower: w.kind = "zonal-power"; break;
    case K::SampledZonal: w.kind = "sampled"; break;
  }
  w.param = g.kind() == K::SampledZonal ? 0.0 : g.parameter();
  w.angles = g.angles();
  w.values = g.values();
  w.scale = g.amplitude();
  return w;
}

RadialProfile RadialSpec::build() const {
  auto arity = [&](std::size_t n) {
    if (params.size() != n) config_fail("radial profile '" + kind + "' has the wrong number of parameters");
  };
  RadialProfile f = RadialProfile::tent(1.0);
  if (kind == "tent") {
    arity(1);
    f = RadialProfile::tent(params[0]);
  } else if (kind == "truncated-power") {
    arity(4);
    f = RadialProfile::truncated_power(params[0], params[1], params[2], params[3]);
  } else if (kind == "exp-bump") {
    arity(2);
    f = RadialProfile::exp_bump(params[0], params[1]);
  } else if (kind == "sampled") {
    f = RadialProfile::sampled(r, v);
  } else {
    config_fail("unknown radial profile kind '" + kind + "'");
  }
  if (amplitude != 1.0) f = f.scaled(amplitude);
  if (dilation != 1.0) f = f.dilated(dilation);
  return f;
}

RadialSpec RadialSpec::from(const RadialProfile& f) {
  RadialSpec s;
  using K = RadialProfile::Kind;
  switch (f.kind()) {
    case K::Tent: s.kind = "tent"; break;
    case K::TruncatedPower: s.kind = "truncated-power"; break;
    case K::ExpBump: s.kind = "exp-bump"; break;
    case K::Sampled: s.kind = "sampled"; break;
  }
  s.params = f.params();
  s.r = f.table_r();
  s.v = f.table_v();
  s.amplitude = f.amplitude();
  s.dilation = f.dilation();
  return s;
}

AngularFactor AngularSpec::build() const {
  if (kind == "one") return AngularFactor::one();
  if (kind == "cos") return AngularFactor::cos();
  if (kind == "cap-smooth") return AngularFactor::cap_smooth(phi0, ramp);
  config_fail("unknown angular factor kind '" + kind + "'");
}

AngularSpec AngularSpec::from(const AngularFactor& h) {
  AngularSpec s;
  using K = AngularFactor::Kind;
  switch (h.kind()) {
    case K::One: s.kind = "one"; break;
    case K::Cos: s.kind = "cos"; break;
    case K::CapSmooth:
      s.kind = "cap-smooth";
      s.phi0 = h.phi0();
      s.ramp = h.ramp();
      break;
  }
  return s;
}

RunConfig parse_config(const std::string& document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    config_fail(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) config_fail("config must be a JSON object");
  reject_unknown(root,
                 {"command", "theorem", "theorems", "case", "cases", "N", "p", "alpha", "s", "q", "beta",
                  "degree", "empirical_constant", "weight", "weights", "test", "tests", "profile",
                  "profiles", "quadrature", "sweep", "rearrange", "output"},
                 "config");

  RunConfig c;
  std::string cmd = text(root, "command", "config");
  auto command = parse_command(cmd);
  if (!command) config_fail("unknown command '" + cmd + "'");
  c.command = *command;
  c.theorems = texts(root, "theorem", "theorems");
  c.cases = texts(root, "case", "cases");
  // The one-dimensional inequality has no ambient dimension; its rows record N = 1.
  const bool one_dimensional = c.command == Command::Sweep && c.theorems == std::vector<std::string>{"hardy-1d"};
  c.N = one_dimensional && !root.contains("N") ? 1 : integer(root, "N", "config");
  c.p = optional_number(root, "p");
  c.alpha = optional_number(root, "alpha");
  c.s = optional_number(root, "s");
  c.q = optional_number(root, "q");
  c.beta = optional_number(root, "beta");
  c.degree = optional_number(root, "degree");
  c.empirical_constant = optional_number(root, "empirical_constant");
  c.weights = descriptor_list<WeightSpec>(root, "weight", "weights", weight_catalog, parse_weight);
  c.tests = descriptor_list<TestSpec>(root, "test", "tests", test_catalog, parse_test);
  c.profiles = descriptor_list<RadialSpec>(root, "profile", "profiles", profile_catalog, parse_radial);
  if (root.contains("sweep") && root.at("sweep").is_object() && root.at("sweep").contains("family")) {
    c.sweep_family = text(root.at("sweep"), "family", "sweep");
  }
  parse_defaults(root, c.defaults);
  if (root.contains("rearrange")) {
    const json& r = root.at("rearrange");
    if (r.contains("u")) c.field_u = numbers(r, "u", "rearrange");
    if (r.contains("v")) c.field_v = numbers(r, "v", "rearrange");
  }
  if (root.contains("output")) {
    const json& o = root.at("output");
    if (!o.is_object()) config_fail("'output' must be an object");
    reject_unknown(o, {"path", "format"}, "output");
    if (o.contains("path")) c.output_path = text(o, "path", "output");
    if (o.contains("format")) c.format = text(o, "format", "output");
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  json root;
  root["command"] = std::string(command_name(c.command));
  if (!c.theorems.empty()) root["theorems"] = c.theorems;
  if (!c.cases.empty()) root["cases"] = c.cases;
  root["N"] = c.N;
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) root[key] = *v;
  };
  put("p", c.p);
  put("alpha", c.alpha);
  put("s", c.s);
  put("q", c.q);
  put("beta", c.beta);
  put("degree", c.degree);
  put("empirical_constant", c.empirical_constant);
  json weights = json::array();
  for (const auto& w : c.weights) weights.push_back(weight_json(w));
  root["weights"] = weights;
  if (!c.tests.empty()) {
    json tests = json::array();
    for (const auto& t : c.tests) tests.push_back({{"radial", radial_json(t.radial)}, {"angular", angular_json(t.angular)}});
    root["tests"] = tests;
  }
  if (!c.profiles.empty()) {
    json profiles = json::array();
    for (const auto& f : c.profiles) profiles.push_back(radial_json(f));
    root["profiles"] = profiles;
  }
  const Defaults& d = c.defaults;
  root["quadrature"] = {{"angular_nodes", d.angular_nodes},
                        {"angular_tolerance", d.angular_tolerance},
                        {"radial_tolerance", d.radial_tolerance},
                        {"radial_ratio", d.radial_ratio},
                        {"seminorm_tolerance", d.seminorm_tolerance},
                        {"seminorm_radial_nodes", d.seminorm_radial_nodes},
                        {"seminorm_kernel_nodes", d.seminorm_kernel_nodes},
                        {"slack_tolerance", d.slack_tolerance}};
  root["sweep"] = {{"family", c.sweep_family},
                   {"outer_radius", d.sweep_outer_radius},
                   {"steps", d.sweep_steps},
                   {"monotone_tolerance", d.sweep_monotone_tolerance}};
  json rearrange = {{"levels", d.rearrange_levels}, {"tolerance", d.rearrange_tolerance}};
  if (!c.field_u.empty()) {
    rearrange["u"] = c.field_u;
    rearrange["v"] = c.field_v;
  }
  root["rearrange"] = rearrange;
  json output = {{"format", c.format}};
  if (!c.output_path.empty()) output["path"] = c.output_path;
  root["output"] = output;
  return root.dump(2);
}

}  // namespace hardylab
