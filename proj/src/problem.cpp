#include "tiltsocp/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tiltsocp/cone_solver.hpp"
#include "tiltsocp/errors.hpp"

namespace tiltsocp {

using json = nlohmann::json;

Eigen::MatrixXd MapBundle::action_matrix(const Eigen::VectorXd& v) const {
  Eigen::MatrixXd M(rows(), jacobian.cols());
  for (int i = 0; i < rows(); ++i) M.row(i) = (hessians[i] * v).transpose();
  return M;
}

Eigen::MatrixXd MapBundle::weighted_hessian(const Eigen::VectorXd& lambda) const {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(jacobian.cols(), jacobian.cols());
  for (int i = 0; i < rows(); ++i) H += lambda(i) * hessians[i];
  return H;
}

ScalarBundle eval_derivatives(const PolyFunc& p, const Eigen::VectorXd& x) {
  return {p.value(x), p.gradient(x), p.hessian(x)};
}

MapBundle eval_derivatives(const std::vector<PolyFunc>& g, const Eigen::VectorXd& x) {
  const int rows = static_cast<int>(g.size());
  MapBundle b;
  b.value.resize(rows);
  b.jacobian.resize(rows, x.size());
  b.hessians.reserve(rows);
  for (int i = 0; i < rows; ++i) {
    b.value(i) = g[i].value(x);
    b.jacobian.row(i) = g[i].gradient(x).transpose();
    b.hessians.push_back(g[i].hessian(x));
  }
  return b;
}

Eigen::VectorXd second_order_action(const MapBundle& g, const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& u) {
  Eigen::VectorXd out(g.rows());
  for (int i = 0; i < g.rows(); ++i) out(i) = v.dot(g.hessians[i] * u);
  return out;
}

void ProblemInstance::refresh() {
  fb = eval_derivatives(f, x_base);
  gb = eval_derivatives(g, x_base);
}

Eigen::VectorXd ProblemInstance::g_value(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(g.size());
  for (size_t i = 0; i < g.size(); ++i) out(i) = g[i].value(x);
  return out;
}

ProblemInstance make_instance(PolyFunc f, std::vector<PolyFunc> g,
                              Eigen::VectorXd x_base, double sigma,
                              ToleranceSet tol, std::uint64_t seed) {
  ProblemInstance inst;
  inst.n = static_cast<int>(x_base.size());
  inst.m = static_cast<int>(g.size()) - 1;
  if (inst.n < 1) throw SchemaError("n must be >= 1");
  if (inst.m < 1) throw SchemaError("m must be >= 1 (g needs at least 2 components)");
  if (f.n() != inst.n) throw SchemaError("f has the wrong dimension");
  for (const auto& gi : g) {
    if (gi.n() != inst.n) throw SchemaError("a component of g has the wrong dimension");
  }
  if (!x_base.allFinite()) throw SchemaError("x_base must be finite");
  inst.f = std::move(f);
  inst.g = std::move(g);
  inst.x_base = std::move(x_base);
  inst.sigma = sigma;
  inst.tol = tol;
  inst.seed = seed;

  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw ValidationError("sigma must be a positive finite number");
  }
  inst.refresh();
  const double gnorm = inst.gb.value.norm();
  if (gnorm > tol.tol_zero) {
    std::ostringstream os;
    os << "g(x_base) must vanish, got norm " << gnorm;
    throw ValidationError(os.str());
  }
  if (!validate_stationarity(inst).stationary) {
    throw ValidationError("x_base is not stationary: the multiplier set is empty");
  }
  return inst;
}

namespace {

PolyFunc parse_poly(const json& j, int n, const std::string& where) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array()) {
    throw SchemaError(where + ": expected an object with a \"terms\" array");
  }
  std::vector<Monomial> terms;
  for (size_t k = 0; k < j["terms"].size(); ++k) {
    const json& t = j["terms"][k];
    const std::string at = where + "/terms/" + std::to_string(k);
    if (!t.is_object() || !t.contains("c") || !t.contains("e")) {
      throw SchemaError(at + ": expected {\"c\": real, \"e\": [int]}");
    }
    if (!t["c"].is_number()) throw SchemaError(at + "/c: expected a number");
    if (!t["e"].is_array()) throw SchemaError(at + "/e: expected an array");
    Monomial mono;
    mono.c = t["c"].get<double>();
    for (const auto& ek : t["e"]) {
      if (!ek.is_number_integer()) throw SchemaError(at + "/e: expected integers");
      mono.e.push_back(ek.get<int>());
    }
    terms.push_back(std::move(mono));
  }
  try {
    return PolyFunc(n, std::move(terms));
  } catch (const std::invalid_argument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

json poly_to_json(const PolyFunc& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) terms.push_back({{"c", t.c}, {"e", t.e}});
  return {{"terms", terms}};
}

}  // namespace

ProblemInstance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("/: not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("/: expected an object");
  for (const char* key : {"n", "m", "x_base", "sigma", "f", "g"}) {
    if (!doc.contains(key)) throw SchemaError(std::string("/") + key + ": missing");
  }
  if (!doc["n"].is_number_integer()) throw SchemaError("/n: expected an integer");
  if (!doc["m"].is_number_integer()) throw SchemaError("/m: expected an integer");
  const int n = doc["n"].get<int>();
  const int m = doc["m"].get<int>();
  if (n < 1) throw SchemaError("/n: must be >= 1");
  if (m < 1) throw SchemaError("/m: must be >= 1");
  if (!doc["x_base"].is_array() || static_cast<int>(doc["x_base"].size()) != n) {
    throw SchemaError("/x_base: expected an array of n numbers");
  }
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    if (!doc["x_base"][i].is_number()) throw SchemaError("/x_base: expected numbers");
    x(i) = doc["x_base"][i].get<double>();
  }
  if (!doc["sigma"].is_number()) throw SchemaError("/sigma: expected a number");
  const double sigma = doc["sigma"].get<double>();
  PolyFunc f = parse_poly(doc["f"], n, "/f");
  if (!doc["g"].is_array() || static_cast<int>(doc["g"].size()) != 1 + m) {
    throw SchemaError("/g: expected an array of 1+m polynomials");
  }
  std::vector<PolyFunc> g;
  for (int i = 0; i <= m; ++i) g.push_back(parse_poly(doc["g"][i], n, "/g/" + std::to_string(i)));

  ToleranceSet tol;
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) throw SchemaError("/tolerances: expected an object");
    auto read = [&](const char* key, double& out) {
      if (!t.contains(key)) return;
      if (!t[key].is_number() || !(t[key].get<double>() >= 0.0)) {
        throw SchemaError(std::string("/tolerances/") + key + ": expected a nonnegative number");
      }
      out = t[key].get<double>();
    };
    read("tol_zero", tol.tol_zero);
    read("tol_cone", tol.tol_cone);
    read("tol_rank", tol.tol_rank);
    read("margin_strict", tol.margin_strict);
  }
  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer()) throw SchemaError("/seed: expected an integer");
    seed = doc["seed"].get<std::uint64_t>();
  }
  return make_instance(std::move(f), std::move(g), std::move(x), sigma, tol, seed);
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const ProblemInstance& inst) {
  json doc;
  doc["n"] = inst.n;
  doc["m"] = inst.m;
  doc["x_base"] = std::vector<double>(inst.x_base.data(), inst.x_base.data() + inst.n);
  doc["sigma"] = inst.sigma;
  doc["f"] = poly_to_json(inst.f);
  doc["g"] = json::array();
  for (const auto& gi : inst.g) doc["g"].push_back(poly_to_json(gi));
  doc["tolerances"] = {{"tol_zero", inst.tol.tol_zero},
                       {"tol_cone", inst.tol.tol_cone},
                       {"tol_rank", inst.tol.tol_rank},
                       {"margin_strict", inst.tol.margin_strict}};
  doc["seed"] = inst.seed;
  return doc.dump(2);
}

StationarityResult validate_stationarity(const ProblemInstance& inst) {
  const MultiplierSlice slice = build_slice(inst.J(), -inst.grad_f(), inst.tol.tol_rank);
  const FeasibilityResult fr = feasibility(slice);
  return {fr.feasible, fr.point};
}

}  // namespace tiltsocp
