#include "tiltsocp/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>

#include "tiltsocp/errors.hpp"

namespace tiltsocp {

namespace {

using json = nlohmann::json;
using Vec = Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

json vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Vec to_vec(const json& a) {
  Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

// Non-finite values are written as null and read back as +inf.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double from_num(const json& j) { return j.is_null() ? kInf : j.get<double>(); }

std::optional<CertificateRecord> record_of(const Certificate& c) {
  if (!c.found) return std::nullopt;
  return CertificateRecord{c.u, c.lambda, c.v, c.w};
}

json cert_json(const std::optional<CertificateRecord>& c) {
  if (!c) return nullptr;
  return {{"u", vec(c->u)}, {"lambda", vec(c->lambda)}, {"v", vec(c->v)}, {"w", vec(c->w)}};
}

std::optional<CertificateRecord> cert_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return CertificateRecord{to_vec(j.at("u")), to_vec(j.at("lambda")), to_vec(j.at("v")), to_vec(j.at("w"))};
}

ChiRecord chi_record(const ChiResult& c) {
  return {c.value, c.unbounded_multipliers, c.limit_only, c.candidates, record_of(c.cert)};
}

json chi_json(const ChiRecord& c) {
  return {{"value", num(c.value)},
          {"unbounded_multipliers", c.unbounded_multipliers},
          {"limit_only", c.limit_only},
          {"candidates", c.candidates},
          {"certificate", cert_json(c.certificate)}};
}

ChiRecord chi_from(const json& j) {
  return {from_num(j.at("value")), j.at("unbounded_multipliers").get<bool>(), j.at("limit_only").get<bool>(),
          j.at("candidates").get<int>(), cert_from(j.at("certificate"))};
}

json vec_list(const std::vector<Vec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(vec(v));
  return a;
}

std::vector<Vec> vec_list_from(const json& a) {
  std::vector<Vec> out;
  for (const auto& v : a) out.push_back(to_vec(v));
  return out;
}

json instance_json(const ProblemInstance& inst) {
  return {{"hash", instance_hash(inst)}, {"n", inst.n}, {"m", inst.m}, {"sigma", inst.sigma}};
}

void write_json(const json& j, const std::optional<std::string>& path) {
  const std::string text = j.dump(2) + "\n";
  if (!path) {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw std::runtime_error("cannot write report to " + *path);
  out << text;
}

ProblemInstance load_with_overrides(const CommonArgs& a) {
  ProblemInstance inst = load_instance(a.instance_path);
  if (a.tol_cone) inst.tol.tol_cone = *a.tol_cone;
  if (a.tol_rank) inst.tol.tol_rank = *a.tol_rank;
  if (a.margin) inst.tol.margin_strict = *a.margin;
  if (a.seed) inst.seed = *a.seed;
  return inst;
}

// Input errors go to stderr; the message starts with the offending JSON pointer.
int input_error(const std::string& path, const std::exception& e) {
  std::cerr << "error: " << path << ": " << e.what() << "\n";
  return 64;
}

}  // namespace

std::string instance_hash(const ProblemInstance& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : serialize_instance(inst)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report make_report(const ProblemInstance& inst, const AnalysisVerdict& a, const std::optional<TiltExperiment>& ex,
                   double seconds) {
  Report r;
  r.seed = inst.seed;
  r.instance_hash = instance_hash(inst);
  r.n = inst.n;
  r.m = inst.m;
  r.sigma = inst.sigma;
  r.case_tag = to_string(a.case_tag);
  r.verdict = to_string(a.verdict);
  r.bound_estimate = a.bound_estimate;
  r.infimum_not_attained = a.infimum_not_attained;
  r.heuristic = a.heuristic;
  r.reason = a.reason;
  r.u_bar = a.u_bar;
  r.lambda_bar = a.lambda_bar;
  r.out_kernel_min = a.out_min;
  r.chi1 = chi_record(a.chi1);
  r.chi2 = chi_record(a.chi2);
  r.chi3 = chi_record(a.chi3);
  r.witness = record_of(a.witness);
  r.simplified_test = a.simplified.passes ? "Passes" : "Fails";
  r.simplified_min = a.simplified.min_value;
  if (a.simplified.u.size()) r.simplified_point = CertificateRecord{a.simplified.u, a.simplified.lambda, a.simplified.v, Vec()};
  r.two_regularity = to_string(a.two_regularity);
  r.two_regular_checked = a.two_regular_checked;
  r.quadruples = a.quadruples;
  if (ex) {
    EmpiricalRecord e;
    e.gamma = ex->gamma;
    e.r_tilt = ex->r_tilt;
    e.grid_size = ex->grid_size;
    e.modulus_estimate = ex->modulus_estimate;
    e.grid_modulus = ex->grid_modulus;
    e.refinements = ex->refinements;
    if (!std::isnan(ex->kappa_theory)) e.kappa_theory = ex->kappa_theory;
    e.unstable = ex->unstable;
    e.degraded = ex->degraded;
    e.heuristic = ex->heuristic;
    e.base_deviation = ex->base_deviation;
    e.max_violation = ex->max_violation;
    e.tilt_grid = ex->tilt_grid;
    e.solutions = ex->solutions;
    r.empirical = e;
  }
  r.seconds = seconds;
  return r;
}

json to_json(const Report& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["tool_version"] = r.version;
  j["seed"] = r.seed;
  j["instance"] = {{"hash", r.instance_hash}, {"n", r.n}, {"m", r.m}, {"sigma", r.sigma}};
  j["case"] = r.case_tag;
  j["verdict"] = r.verdict;
  j["bound_estimate"] = num(r.bound_estimate);
  j["infimum_not_attained"] = r.infimum_not_attained;
  j["heuristic"] = r.heuristic;
  j["reason"] = r.reason;
  j["u_bar"] = vec(r.u_bar);
  j["lambda_bar"] = vec(r.lambda_bar);
  j["out_kernel_min"] = num(r.out_kernel_min);
  j["chi1"] = chi_json(r.chi1);
  j["chi2"] = chi_json(r.chi2);
  j["chi3"] = chi_json(r.chi3);
  j["witness"] = cert_json(r.witness);
  j["simplified_test"] = r.simplified_test;
  j["simplified"] = {{"min_value", num(r.simplified_min)}, {"point", cert_json(r.simplified_point)}};
  j["two_regularity"] = {{"status", r.two_regularity}, {"checked", r.two_regular_checked}};
  j["quadruples"] = r.quadruples;
  if (r.empirical) {
    const EmpiricalRecord& e = *r.empirical;
    j["empirical"] = {{"gamma", e.gamma},
                      {"r_tilt", e.r_tilt},
                      {"grid_size", e.grid_size},
                      {"modulus_estimate", num(e.modulus_estimate)},
                      {"grid_modulus", num(e.grid_modulus)},
                      {"refinements", e.refinements},
                      {"kappa_theory", e.kappa_theory ? num(*e.kappa_theory) : json(nullptr)},
                      {"unstable", e.unstable},
                      {"degraded", e.degraded},
                      {"heuristic", e.heuristic},
                      {"base_deviation", e.base_deviation},
                      {"max_violation", e.max_violation},
                      {"tilt_grid", vec_list(e.tilt_grid)},
                      {"solutions", vec_list(e.solutions)}};
  } else {
    j["empirical"] = nullptr;
  }
  j["timing"] = {{"seconds", r.seconds}};
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion) throw SchemaError("/schema_version: unsupported");
  r.version = j.at("tool_version").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  const json& in = j.at("instance");
  r.instance_hash = in.at("hash").get<std::string>();
  r.n = in.at("n").get<int>();
  r.m = in.at("m").get<int>();
  r.sigma = in.at("sigma").get<double>();
  r.case_tag = j.at("case").get<std::string>();
  r.verdict = j.at("verdict").get<std::string>();
  r.bound_estimate = from_num(j.at("bound_estimate"));
  r.infimum_not_attained = j.at("infimum_not_attained").get<bool>();
  r.heuristic = j.at("heuristic").get<bool>();
  r.reason = j.at("reason").get<std::string>();
  r.u_bar = to_vec(j.at("u_bar"));
  r.lambda_bar = to_vec(j.at("lambda_bar"));
  r.out_kernel_min = from_num(j.at("out_kernel_min"));
  r.chi1 = chi_from(j.at("chi1"));
  r.chi2 = chi_from(j.at("chi2"));
  r.chi3 = chi_from(j.at("chi3"));
  r.witness = cert_from(j.at("witness"));
  r.simplified_test = j.at("simplified_test").get<std::string>();
  r.simplified_min = from_num(j.at("simplified").at("min_value"));
  r.simplified_point = cert_from(j.at("simplified").at("point"));
  r.two_regularity = j.at("two_regularity").at("status").get<std::string>();
  r.two_regular_checked = j.at("two_regularity").at("checked").get<int>();
  r.quadruples = j.at("quadruples").get<int>();
  if (!j.at("empirical").is_null()) {
    const json& e = j.at("empirical");
    EmpiricalRecord x;
    x.gamma = e.at("gamma").get<double>();
    x.r_tilt = e.at("r_tilt").get<double>();
    x.grid_size = e.at("grid_size").get<int>();
    x.modulus_estimate = from_num(e.at("modulus_estimate"));
    x.grid_modulus = from_num(e.at("grid_modulus"));
    x.refinements = e.at("refinements").get<int>();
    if (!e.at("kappa_theory").is_null()) x.kappa_theory = e.at("kappa_theory").get<double>();
    x.unstable = e.at("unstable").get<bool>();
    x.degraded = e.at("degraded").get<bool>();
    x.heuristic = e.at("heuristic").get<bool>();
    x.base_deviation = e.at("base_deviation").get<double>();
    x.max_violation = e.at("max_violation").get<double>();
    x.tilt_grid = vec_list_from(e.at("tilt_grid"));
    x.solutions = vec_list_from(e.at("solutions"));
    r.empirical = x;
  }
  r.seconds = j.at("timing").at("seconds").get<double>();
  return r;
}

int run_analyze(const AnalyzeArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  ProblemInstance inst;
  try {
    inst = load_with_overrides(args);
  } catch (const SchemaError& e) {
    return input_error(args.instance_path, e);
  } catch (const ValidationError& e) {
    return input_error(args.instance_path, e);
  }
  AnalyzerOptions opt;
  opt.budget = args.budget;
  opt.grid_h = args.grid_h;
  const AnalysisVerdict a = analyze(inst, opt);
  std::optional<TiltExperiment> ex;
  if (args.empirical) {
    std::optional<double> kt;
    if (a.verdict == Verdict::TiltStable) kt = a.bound_estimate;
    ex = empirical_tilt(inst, args.gamma, args.r_tilt, args.grid_size, kt, inst.seed);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_json(to_json(make_report(inst, a, ex, secs)), args.report_path);
  switch (a.verdict) {
    case Verdict::TiltStable:
      return 0;
    case Verdict::NotTiltStable:
      return 1;
    case Verdict::Inconclusive:
      return 2;
  }
  return 2;
}

int run_falsify(const FalsifyArgs& args) {
  ProblemInstance inst;
  try {
    inst = load_with_overrides(args);
    if (args.mode != "mscq" && args.mode != "neighborhood") throw SchemaError("mode must be mscq or neighborhood");
    if (args.samples < 0) throw SchemaError("--samples must be nonnegative");
    if (args.kappa && !(*args.kappa > 0.0)) throw SchemaError("--kappa must be positive");
    if (!(args.eta > 0.0)) throw SchemaError("--eta must be positive");
  } catch (const SchemaError& e) {
    return input_error(args.instance_path, e);
  } catch (const ValidationError& e) {
    return input_error(args.instance_path, e);
  }
  if (args.samples == 0) std::cerr << "warning: --samples 0, nothing was sampled\n";
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["command"] = "falsify";
  j["mode"] = args.mode;
  j["seed"] = inst.seed;
  j["instance"] = instance_json(inst);
  j["samples"] = args.samples;
  bool found = false;
  if (args.mode == "mscq") {
    const MscqResult r = mscq_falsify(inst, args.samples, inst.seed, args.radius);
    j["radius"] = args.radius;
    j["evaluated"] = r.evaluated;
    j["uncertified"] = r.uncertified;
    j["heuristic"] = r.heuristic;
    found = r.witness.has_value();
    j["witness"] = found ? json{{"x", vec(r.witness->x)},
                                {"dist_g", r.witness->dist_g},
                                {"dist_x_lower", r.witness->dist_x_lower}}
                         : json(nullptr);
  } else {
    double kappa = 1.0;
    if (args.kappa) {
      kappa = *args.kappa;
    } else if (args.samples > 0) {
      const AnalysisVerdict a = analyze(inst);
      if (a.verdict == Verdict::TiltStable && a.bound_estimate > 0.0) kappa = 1.01 * a.bound_estimate;
    }
    const NeighborhoodResult r = neighborhood_falsify(inst, kappa, args.eta, args.samples, inst.seed);
    j["kappa"] = kappa;
    j["eta"] = args.eta;
    j["evaluated"] = r.evaluated;
    j["strata"] = {{"vertex", r.vertex}, {"boundary", r.boundary}, {"interior", r.interior}};
    j["min_value"] = num(r.min_value);
    j["heuristic"] = r.heuristic;
    found = r.witness.has_value();
    if (found) {
      const NeighborhoodWitness& w = *r.witness;
      j["witness"] = {{"x", vec(w.x)},         {"x_star", vec(w.x_star)}, {"u", vec(w.u)},
                      {"lambda", vec(w.lambda)}, {"value", w.value},      {"stratum", w.stratum}};
    } else {
      j["witness"] = nullptr;
    }
    if (args.samples > 0) {
      json ladder = json::array();
      for (const auto& st : neighborhood_ladder(inst, std::min(args.samples, 3000), inst.seed)) {
        ladder.push_back({{"eta", st.eta}, {"min_value", num(st.min_value)}, {"sup_inverse", num(st.sup_inverse)}});
      }
      j["eta_ladder"] = ladder;
    }
  }
  write_json(j, args.report_path);
  return found ? 3 : 0;
}

}  // namespace tiltsocp
