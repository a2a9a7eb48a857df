#include "hardylab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "hardylab/error.hpp"
#include "hardylab/fractional.hpp"
#include "hardylab/quotients.hpp"
#include "hardylab/rearrangement.hpp"
#include "hardylab/regimes.hpp"

namespace hardylab {

using nlohmann::json;

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_number(const std::optional<double>& x) { return x ? g17(*x) : std::string(); }

json json_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

QuotientOptions quotient_options(const Defaults& d) {
  QuotientOptions opt;
  opt.sphere = SphereQuadrature::make(d.angular_nodes, d.angular_tolerance);
  opt.radial = RadialQuadrature::make(d.radial_tolerance, d.radial_ratio);
  opt.seminorm.tolerance = d.seminorm_tolerance;
  opt.seminorm.radial_nodes = d.seminorm_radial_nodes;
  opt.seminorm.kernel_nodes = d.seminorm_kernel_nodes;
  opt.slack_tolerance = d.slack_tolerance;
  return opt;
}

// Re-throws library errors with the operation that raised them.
template <class F>
auto named(const std::string& operation, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    std::string what = e.what();
    const std::string prefix = std::string(error_code_name(e.code())) + ": ";
    if (what.starts_with(prefix)) what.erase(0, prefix.size());
    throw Error(e.code(), operation + ": " + what);
  }
}

ReportRow row_from(const QuotientReport& rep) {
  ReportRow row;
  row.theorem = rep.theorem;
  row.case_id = rep.case_id;
  row.weight = rep.weight;
  row.N = rep.N;
  row.p = rep.p;
  if (!rep.s) row.alpha = rep.alpha;
  row.s = rep.s;
  row.q = rep.q;
  row.value = rep.quotient;
  row.bound = rep.bound;
  row.margin = rep.margin;
  row.holds = rep.holds;
  row.scheme = rep.scheme;
  row.est_error = rep.est_error;
  row.test = rep.test;
  row.notes = rep.notes;
  if (rep.empirical) row.notes.push_back("empirical");
  if (rep.reduction_to_classical) row.notes.push_back("reduction-to-classical");
  if (rep.gamma0) row.notes.push_back("gamma0=" + g17(*rep.gamma0));
  return row;
}

Case13Id case_id(const std::string& name) {
  if (name == "case2") return Case13Id::Case2;
  if (name == "case3") return Case13Id::Case3;
  return Case13Id::Case1;
}

Check sharp_check(const std::string& name) {
  if (name == "case2") return Check::SharpL2Case2;
  if (name == "case3") return Check::SharpL2Case3;
  return Check::SharpL2Case1;
}

void apply_scale(ReportRow& row, double scale, double tol) {
  if (scale == 1.0 || !row.bound) return;
  *row.bound *= scale;
  row.margin = *row.bound - *row.value;
  row.holds = *row.margin >= -tol * std::abs(*row.bound);
  row.notes.push_back("bound-scale=" + g17(scale));
}

class Runner {
 public:
  Runner(const RunConfig& c, const RunOptions& o) : cfg_(c), opt_(o), qopt_(quotient_options(c.defaults)) {
    for (const auto& w : c.weights) weights_.push_back(w.build());
  }

  std::vector<ReportRow> run() {
    switch (cfg_.command) {
      case Command::Constant: constants(); break;
      case Command::Verify: verify(); break;
      case Command::Sweep: sweep(); break;
      case Command::Lambda: lambda(); break;
      case Command::Rearrange: rearrange(); break;
    }
    return std::move(rows_);
  }

 private:
  ReportRow base(const std::string& theorem) const {
    ReportRow row;
    row.theorem = theorem;
    row.N = cfg_.N;
    return row;
  }

  void constants() {
    for (const auto& t : cfg_.theorems) {
      named("constant " + t, [&] {
        if (t == "ckn") {
          ReportRow row = base(t);
          row.p = cfg_.p;
          row.alpha = cfg_.alpha;
          row.value = ckn_sharp_constant(Regime::local(cfg_.N, *cfg_.p, *cfg_.alpha));
          rows_.push_back(row);
        } else if (t == "admissible-q") {
          ReportRow row = base(t);
          row.p = cfg_.p;
          row.q = admissible_q(cfg_.N, *cfg_.p, cfg_.q);
          row.value = row.q;
          rows_.push_back(row);
        } else if (t == "gamma0") {
          ReportRow row = base(t);
          row.alpha = cfg_.alpha;
          row.value = gamma0(cfg_.N, *cfg_.alpha);
          rows_.push_back(row);
        } else if (t == "sharp-l2") {
          for (const auto& name : cfg_.cases) {
            const Case13Option opt = resolve_case13(cfg_.N, *cfg_.alpha, case_id(name));
            for (const auto& g : weights_) {
              ReportRow row = base(t);
              row.case_id = name;
              row.weight = g.name();
              row.p = 2.0;
              row.alpha = cfg_.alpha;
              row.q = opt.q;
              row.value = thm13_constant(cfg_.N, *cfg_.alpha, lq_norm(g, opt.q, cfg_.N, qopt_.sphere), opt.q);
              if (opt.gamma0) row.notes.push_back("gamma0=" + g17(*opt.gamma0));
              rows_.push_back(row);
            }
          }
        } else if (t == "homogeneous") {
          const Regime reg = Regime::local(cfg_.N, *cfg_.p, *cfg_.alpha);
          const double q = cfg_.N / (reg.p + reg.alpha);
          for (const auto& g : weights_) {
            ReportRow row = base(t);
            row.weight = g.name();
            row.p = reg.p;
            row.alpha = reg.alpha;
            row.q = q;
            row.value = thm31_constant(reg, lq_norm(g, q, cfg_.N, qopt_.sphere));
            rows_.push_back(row);
          }
        } else if (t == "fractional") {
          const FracRegime frac = FracRegime::make(cfg_.N, *cfg_.s, *cfg_.p);
          const LambdaCrossCheck lam = lambda_cross_validated(frac);
          const double q = cfg_.N / frac.sp();
          for (const auto& g : weights_) {
            ReportRow row = base(t);
            row.weight = g.name();
            row.p = frac.p;
            row.s = frac.s;
            row.q = q;
            row.value = frac_constant(frac, lq_norm(g, q, cfg_.N, qopt_.sphere), lam.lambda);
            row.scheme = "graded-gauss+tanh-sinh";
            row.est_error = lam.est_error;
            rows_.push_back(row);
          }
        }
        return 0;
      });
    }
  }

  void verify() {
    for (const auto& t : cfg_.theorems) {
      if (t == "weighted-lq") verify_weighted_lq();
      if (t == "sharp-l2") {
        for (const auto& name : cfg_.cases) verify_local(sharp_check(name), 2.0);
      }
      if (t == "homogeneous") verify_local(Check::Homogeneous, *cfg_.p);
      if (t == "fractional") verify_fractional();
    }
  }

  VerifyInput input(Check check, double p) const {
    VerifyInput in;
    in.check = check;
    in.N = cfg_.N;
    in.p = p;
    in.alpha = cfg_.alpha.value_or(0.0);
    in.user_q = cfg_.q;
    in.bound_scale = opt_.bound_scale;
    return in;
  }

  std::string operation(Check check, const SphericalWeight& g, const std::string& test) const {
    std::string op = "verify " + std::string(check_name(check));
    if (!check_case(check).empty()) op += " " + std::string(check_case(check));
    return op + " weight=" + g.name() + " test=" + test;
  }

  void verify_local(Check check, double p) {
    for (const auto& g : weights_) {
      for (const auto& spec : cfg_.tests) {
        VerifyInput in = input(check, p);
        in.g = g;
        in.u = spec.build();
        rows_.push_back(row_from(named(operation(check, g, in.u.name()), [&] { return verify_case(in, qopt_); })));
      }
    }
  }

  // The constant is not explicit: the bound is the supremum of the quotients
  // over the requested catalog unless an empirical constant is supplied.
  void verify_weighted_lq() {
    std::vector<ReportRow> block;
    for (const auto& g : weights_) {
      for (const auto& spec : cfg_.tests) {
        VerifyInput in = input(Check::WeightedLq, *cfg_.p);
        in.g = g;
        in.u = spec.build();
        in.empirical_constant = cfg_.empirical_constant;
        in.bound_scale = 1.0;
        block.push_back(row_from(
            named(operation(Check::WeightedLq, g, in.u.name()), [&] { return verify_case(in, qopt_); })));
      }
    }
    double bound = 0.0;
    if (cfg_.empirical_constant) {
      bound = *cfg_.empirical_constant;
    } else {
      for (const auto& row : block) bound = std::max(bound, *row.value);
    }
    for (auto& row : block) {
      std::erase(row.notes, std::string("bound=own-quotient"));
      if (!cfg_.empirical_constant) row.notes.push_back("bound=catalog-supremum");
      row.bound = bound;
      row.margin = bound - *row.value;
      row.holds = *row.margin >= -cfg_.defaults.slack_tolerance * std::abs(bound);
      apply_scale(row, opt_.bound_scale, cfg_.defaults.slack_tolerance);
      rows_.push_back(row);
    }
  }

  void verify_fractional() {
    const FracRegime frac = FracRegime::make(cfg_.N, *cfg_.s, *cfg_.p);
    const LambdaCrossCheck lam = named("lambda", [&] { return lambda_cross_validated(frac); });
    // The seminorm does not depend on the weight; compute it once per profile.
    std::vector<double> seminorms;
    for (const auto& spec : cfg_.profiles) {
      const RadialProfile f = spec.build();
      seminorms.push_back(named("seminorm test=" + f.name(),
                                [&] { return frac_seminorm_radial(f, frac, qopt_.seminorm); }));
    }
    for (const auto& g : weights_) {
      for (std::size_t i = 0; i < cfg_.profiles.size(); ++i) {
        VerifyInput in = input(Check::Fractional, frac.p);
        in.s = frac.s;
        in.g = g;
        in.u = TestFunction{cfg_.profiles[i].build(), AngularFactor::one()};
        in.lambda = lam;
        in.seminorm = seminorms[i];
        rows_.push_back(
            row_from(named(operation(Check::Fractional, g, in.u.name()), [&] { return verify_case(in, qopt_); })));
      }
    }
  }

  // One row per step, then a summary row whose verdict combines monotonicity
  // (within the noise tolerance) and the bound.
  template <class Steps>
  void sweep_rows(const std::string& theorem, const std::string& weight, const Steps& steps, double bound) {
    const double tol = cfg_.defaults.slack_tolerance;
    const double mono = cfg_.defaults.sweep_monotone_tolerance;
    bool monotone = true;
    bool below = true;
    double previous = -INFINITY;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      ReportRow row = steps[k];
      row.theorem = theorem;
      row.weight = weight;
      row.case_id = "step-" + std::to_string(k + 1);
      row.bound = bound;
      row.margin = bound - *row.value;
      row.holds = *row.margin >= -tol * std::abs(bound);
      if (opt_.bound_scale != 1.0) row.notes.push_back("bound-scale=" + g17(opt_.bound_scale));
      if (*row.value < previous * (1.0 - mono)) monotone = false;
      below = below && *row.holds;
      previous = std::max(previous, *row.value);
      rows_.push_back(row);
    }
    ReportRow summary = rows_.back();
    summary.case_id = "final";
    summary.holds = monotone && below;
    summary.test.clear();
    summary.notes = {"final-gap=" + g17(*summary.margin), "ratio=" + g17(*summary.value / bound)};
    if (!monotone) summary.notes.push_back("not-monotone");
    rows_.push_back(summary);
  }

  void sweep() {
    const SweepFamily family =
        SweepFamily::make(cfg_.sweep_family, cfg_.defaults.sweep_outer_radius, cfg_.defaults.sweep_steps);
    for (const auto& t : cfg_.theorems) {
      if (t == "hardy-1d") {
        const auto steps = named("sweep hardy-1d", [&] {
          return hardy_1d_sweep(*cfg_.p, *cfg_.beta, family.steps, qopt_.radial);
        });
        std::vector<ReportRow> rows;
        for (std::size_t k = 0; k < steps.size(); ++k) {
          ReportRow row = base(t);
          row.p = cfg_.p;
          row.value = steps[k].ratio();
          row.scheme = "adaptive-gk15";
          row.notes = {"beta=" + g17(*cfg_.beta)};
          rows.push_back(row);
        }
        const double bound = 1.0 * opt_.bound_scale;
        sweep_rows(t, "", rows, bound);
        continue;
      }
      const Check check = t == "fractional" ? Check::Fractional : Check::Homogeneous;
      for (const auto& g : weights_) {
        const double second = check == Check::Fractional ? *cfg_.s : *cfg_.alpha;
        const auto reps = named("sweep " + t + " weight=" + g.name(), [&] {
          return sharpness_sweep(check, g, cfg_.N, *cfg_.p, second, family, qopt_);
        });
        std::vector<ReportRow> rows;
        for (const auto& rep : reps) rows.push_back(row_from(rep));
        const double bound = reps.empty() ? 0.0 : reps.front().bound * opt_.bound_scale;
        sweep_rows(t, g.name(), rows, bound);
      }
    }
  }

  void lambda() {
    const FracRegime frac = FracRegime::make(cfg_.N, *cfg_.s, *cfg_.p);
    const LambdaCrossCheck lam = named("lambda", [&] { return lambda_cross_validated(frac); });
    auto add = [&](const std::string& scheme, double value, double err) {
      ReportRow row = base("lambda");
      row.p = frac.p;
      row.s = frac.s;
      row.value = value;
      row.scheme = scheme;
      row.est_error = err;
      rows_.push_back(row);
    };
    add("graded-gauss", lam.graded.lambda, lam.graded.est_error);
    add("tanh-sinh", lam.tanh_sinh.lambda, lam.tanh_sinh.est_error);
    add("cross-validated", lam.lambda, lam.est_error);
    rows_.back().notes.push_back("rel-diff=" + g17(lam.rel_diff));
  }

  void rearrange() {
    const double d = *cfg_.degree;
    const double tol = cfg_.defaults.rearrange_tolerance;
    for (const auto& g : weights_) {
      named("rearrange weight=" + g.name(), [&] {
        const HomogeneousWeight w = HomogeneousWeight::make(g, d);
        const double A = rearranged_coefficient(w, cfg_.N, qopt_.sphere);
        ReportRow row = base("rearrange");
        row.case_id = "coefficient";
        row.weight = g.name();
        row.q = cfg_.N / d;
        row.value = A;
        row.notes = {"degree=" + g17(d)};
        rows_.push_back(row);
        for (double t : cfg_.defaults.rearrange_levels) {
          ReportRow lv = row;
          lv.case_id = "level=" + g17(t);
          lv.value = superlevel_measure(w, t, cfg_.N, qopt_.sphere);
          lv.bound = radial_superlevel_measure(A, d, t, cfg_.N);
          lv.margin = *lv.bound - *lv.value;
          lv.holds = std::abs(*lv.margin) <= tol * std::abs(*lv.bound);
          rows_.push_back(lv);
        }
        return 0;
      });
    }
    if (!cfg_.field_u.empty()) {
      const double gap = named("rearrange hardy-littlewood", [&] {
        return hardy_littlewood_gap(SampledField::make(cfg_.field_u), SampledField::make(cfg_.field_v));
      });
      ReportRow row = base("rearrange");
      row.case_id = "hardy-littlewood";
      row.value = gap;
      row.bound = 0.0;
      row.margin = gap;
      double scale = 0.0;
      for (std::size_t i = 0; i < cfg_.field_u.size(); ++i) scale += std::abs(cfg_.field_u[i] * cfg_.field_v[i]);
      row.holds = gap >= -1e-12 * std::max(1.0, scale);
      rows_.push_back(row);
    }
  }

  const RunConfig& cfg_;
  RunOptions opt_;
  QuotientOptions qopt_;
  std::vector<SphericalWeight> weights_;
  std::vector<ReportRow> rows_;
};

json defaults_json(const Defaults& d) {
  return {{"angular_nodes", d.angular_nodes},
          {"angular_tolerance", d.angular_tolerance},
          {"radial_tolerance", d.radial_tolerance},
          {"radial_ratio", d.radial_ratio},
          {"seminorm_tolerance", d.seminorm_tolerance},
          {"seminorm_radial_nodes", d.seminorm_radial_nodes},
          {"seminorm_kernel_nodes", d.seminorm_kernel_nodes},
          {"slack_tolerance", d.slack_tolerance},
          {"sweep_outer_radius", d.sweep_outer_radius},
          {"sweep_steps", d.sweep_steps},
          {"sweep_monotone_tolerance", d.sweep_monotone_tolerance},
          {"rearrange_tolerance", d.rearrange_tolerance},
          {"rearrange_levels", d.rearrange_levels}};
}

std::string metadata(const RunConfig& cfg, const RunOptions& opt, const std::vector<ReportRow>& rows) {
  json meta;
  meta["command"] = std::string(command_name(cfg.command));
  meta["header"] = kReportHeader;
  meta["defaults"] = defaults_json(cfg.defaults);
  meta["config"] = json::parse(serialize_config(cfg));
  if (opt.bound_scale != 1.0) meta["bound_scale"] = opt.bound_scale;
  const bool sharp = std::find(cfg.theorems.begin(), cfg.theorems.end(), "sharp-l2") != cfg.theorems.end();
  if (sharp && cfg.alpha) {
    const Case13 c = classify_case13(cfg.N, *cfg.alpha);
    json avail = json::array();
    for (const auto& o : c.available) avail.push_back(std::string(case13_name(o.id)));
    meta["sharp_l2"] = {{"primary_case", std::string(case13_name(c.case_id))},
                        {"available_cases", avail},
                        {"two_N_alpha", c.threshold_lhs},
                        {"proof_threshold", c.threshold_rhs},
                        {"statement_threshold", c.statement_threshold_rhs},
                        {"critical_threshold", c.critical_rhs},
                        {"gamma0", c.gamma0 ? json(*c.gamma0) : json(nullptr)}};
  }
  json annotated = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].test.empty() && rows[i].notes.empty()) continue;
    json entry = {{"row", i + 1}};
    if (!rows[i].test.empty()) entry["test"] = rows[i].test;
    if (!rows[i].notes.empty()) entry["notes"] = rows[i].notes;
    annotated.push_back(entry);
  }
  meta["rows"] = annotated;
  return meta.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace

int Report::exit_status() const {
  for (const auto& row : rows) {
    if (row.holds && !*row.holds) return 2;
  }
  return 0;
}

Report run(const RunConfig& config, const RunOptions& options) {
  if (!std::isfinite(options.bound_scale) || !(options.bound_scale > 0.0)) {
    fail(ErrorCode::InvalidArgument, "bound scale must be > 0");
  }
  Report report;
  report.command = config.command;
  report.rows = Runner(config, options).run();
  report.metadata = metadata(config, options, report.rows);
  return report;
}

std::string format_rows(const std::vector<ReportRow>& rows, const std::string& format) {
  if (format == "csv") {
    std::string out = std::string(kReportHeader) + "\n";
    for (const auto& r : rows) {
      std::string line;
      line += csv_field(r.theorem) + ",";
      line += csv_field(r.case_id) + ",";
      line += csv_field(r.weight) + ",";
      line += std::to_string(r.N) + ",";
      line += csv_number(r.p) + ",";
      line += csv_number(r.alpha) + ",";
      line += csv_number(r.s) + ",";
      line += csv_number(r.q) + ",";
      line += csv_number(r.value) + ",";
      line += csv_number(r.bound) + ",";
      line += csv_number(r.margin) + ",";
      line += (r.holds ? (*r.holds ? "true" : "false") : "") + std::string(",");
      line += csv_field(r.scheme) + ",";
      line += csv_number(r.est_error);
      out += line + "\n";
    }
    return out;
  }
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      nlohmann::ordered_json o;
      o["theorem"] = r.theorem;
      o["case"] = r.case_id;
      o["weight"] = r.weight;
      o["N"] = r.N;
      o["p"] = json_number(r.p);
      o["alpha"] = json_number(r.alpha);
      o["s"] = json_number(r.s);
      o["q"] = json_number(r.q);
      o["value"] = json_number(r.value);
      o["bound"] = json_number(r.bound);
      o["margin"] = json_number(r.margin);
      o["holds"] = r.holds ? nlohmann::ordered_json(*r.holds) : nlohmann::ordered_json(nullptr);
      o["scheme"] = r.scheme;
      o["est_error"] = json_number(r.est_error);
      arr.push_back(o);
    }
    return arr.dump(2) + "\n";
  }
  fail(ErrorCode::ConfigError, "unknown report format '" + format + "'");
}

void emit_report(const Report& report, const std::string& format, const std::string& path) {
  const std::string body = format_rows(report.rows, format);
  if (path.empty()) {
    std::cout << body;
    std::cout.flush();
    return;
  }
  write_file(path, body);
  write_file(path + ".meta.json", report.metadata);
}

}  // namespace hardylab
