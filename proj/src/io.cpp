#include "wmink/io.hpp"

#include "wmink/errors.hpp"

#include <cmath>
#include <initializer_list>

namespace wmink::io {

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

class Reader {
 public:
  explicit Reader(const JsonLocator& loc) : loc_(loc) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    throw SchemaError((ptr.empty() ? std::string("document") : ptr) + ": " + msg, loc_.line_of(ptr));
  }

  void expect_object(const json& j, const std::string& ptr) const {
    if (!j.is_object()) fail(ptr, "expected an object");
  }

  void only_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> keys) const {
    for (auto it = j.begin(); it != j.end(); ++it) {
      bool known = false;
      for (const char* k : keys) known = known || it.key() == k;
      if (!known) fail(ptr + "/" + it.key(), "unknown key '" + it.key() + "'");
    }
  }

  const json& require(const json& j, const std::string& ptr, const char* key) const {
    if (!j.contains(key)) fail(ptr, std::string("missing required key '") + key + "'");
    return j.at(key);
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "number is not finite");
    return v;
  }

  double positive(const json& j, const std::string& ptr) const {
    const double v = number(j, ptr);
    if (!(v > 0.0)) fail(ptr, "must be positive");
    return v;
  }

  long long integer(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<long long>();
  }

  Vec vector(const json& j, const std::string& ptr, int size) const {
    if (!j.is_array()) fail(ptr, "expected an array");
    if (static_cast<int>(j.size()) != size) fail(ptr, "expected " + std::to_string(size) + " coordinates");
    Vec v(size);
    for (int i = 0; i < size; ++i) v(i) = number(j[i], ptr + "/" + std::to_string(i));
    return v;
  }

 private:
  const JsonLocator& loc_;
};

Weight parse_weight_impl(const Reader& rd, const json& j, int n, const std::string& ptr,
                         std::optional<double> beta_override) {
  rd.expect_object(j, ptr);
  rd.only_keys(j, ptr, {"kind", "value", "profile", "beta"});
  const json& kind_j = rd.require(j, ptr, "kind");
  if (!kind_j.is_string()) rd.fail(ptr + "/kind", "expected a string");
  const std::string kind = kind_j.get<std::string>();

  WeightKind k;
  if (kind == "constant")
    k = WeightKind::constant;
  else if (kind == "gaussian")
    k = WeightKind::gaussian;
  else if (kind == "radial_profile")
    k = WeightKind::radial_profile;
  else
    rd.fail(ptr + "/kind", "unknown weight kind '" + kind + "' (expected constant, gaussian or radial_profile)");

  if (k != WeightKind::constant && j.contains("value")) rd.fail(ptr + "/value", "'value' is only valid for constant weights");
  if (k != WeightKind::radial_profile && j.contains("profile"))
    rd.fail(ptr + "/profile", "'profile' is only valid for radial_profile weights");

  double beta = Weight::default_beta(k, n);
  if (j.contains("beta")) beta = rd.positive(j.at("beta"), ptr + "/beta");
  if (beta_override) beta = *beta_override;

  try {
    switch (k) {
      case WeightKind::constant: {
        const double value = j.contains("value") ? rd.positive(j["value"], ptr + "/value") : 1.0;
        return Weight::constant(value, beta);
      }
      case WeightKind::gaussian:
        return Weight::gaussian(n, beta);
      case WeightKind::radial_profile: {
        const json& prof = rd.require(j, ptr, "profile");
        if (!prof.is_array() || prof.empty()) rd.fail(ptr + "/profile", "expected a non-empty array of [r, g] pairs");
        std::vector<std::pair<double, double>> knots;
        for (std::size_t i = 0; i < prof.size(); ++i) {
          const std::string p = ptr + "/profile/" + std::to_string(i);
          const Vec rg = rd.vector(prof[i], p, 2);
          knots.emplace_back(rg(0), rg(1));
        }
        return Weight::radial_profile(std::move(knots), beta);
      }
    }
  } catch (const InvalidWeight& e) {
    rd.fail(ptr, e.what());
  }
  rd.fail(ptr, "unreachable weight kind");
}

ProblemInput parse_problem_impl(const Reader& rd, const json& j, const std::string& base,
                                std::optional<double> beta_override) {
  rd.expect_object(j, base);
  rd.only_keys(j, base, {"dimension", "atoms", "weight", "solver", "quadrature"});
  const long long n = rd.integer(rd.require(j, base, "dimension"), base + "/dimension");
  if (n != 1 && n != 2) rd.fail(base + "/dimension", "dimension must be 1 or 2");
  const int dim = static_cast<int>(n);

  const json& atoms_j = rd.require(j, base, "atoms");
  if (!atoms_j.is_array() || atoms_j.empty()) rd.fail(base + "/atoms", "expected a non-empty array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < atoms_j.size(); ++i) {
    const std::string p = base + "/atoms/" + std::to_string(i);
    const json& a = atoms_j[i];
    rd.expect_object(a, p);
    rd.only_keys(a, p, {"x", "mass"});
    Atom atom;
    atom.x = rd.vector(rd.require(a, p, "x"), p + "/x", dim);
    atom.mass = rd.positive(rd.require(a, p, "mass"), p + "/mass");
    atoms.push_back(std::move(atom));
  }

  Weight weight = parse_weight_impl(rd, rd.require(j, base, "weight"), dim, base + "/weight", beta_override);

  SolverOptions solver;
  if (j.contains("solver")) {
    const std::string p = base + "/solver";
    const json& s = j.at("solver");
    rd.expect_object(s, p);
    rd.only_keys(s, p, {"tol", "max_iters"});
    if (s.contains("tol")) solver.tol = rd.positive(s.at("tol"), p + "/tol");
    if (s.contains("max_iters")) {
      const long long it = rd.integer(s.at("max_iters"), p + "/max_iters");
      if (it < 1 || it > 10'000'000) rd.fail(p + "/max_iters", "must be in [1, 1e7]");
      solver.max_iters = static_cast<int>(it);
    }
  }
  QuadratureSpec quad;
  if (j.contains("quadrature")) {
    const std::string p = base + "/quadrature";
    const json& q = j.at("quadrature");
    rd.expect_object(q, p);
    rd.only_keys(q, p, {"order", "mc_samples", "seed"});
    if (q.contains("order")) {
      const long long o = rd.integer(q.at("order"), p + "/order");
      if (o < 2 || o > 64) rd.fail(p + "/order", "must be in [2, 64]");
      quad.order = static_cast<int>(o);
    }
    if (q.contains("mc_samples")) {
      const long long s = rd.integer(q.at("mc_samples"), p + "/mc_samples");
      if (s < 1000 || s > 100'000'000) rd.fail(p + "/mc_samples", "must be in [1000, 1e8]");
      quad.mc_samples = static_cast<int>(s);
    }
    if (q.contains("seed")) {
      const long long s = rd.integer(q.at("seed"), p + "/seed");
      if (s < 0) rd.fail(p + "/seed", "must be non-negative");
      quad.seed = static_cast<std::uint64_t>(s);
    }
  }

  try {
    DirectionalMeasure rho(dim, std::move(atoms));
    return ProblemInput{std::move(rho), std::move(weight), solver, quad};
  } catch (const std::invalid_argument& e) {
    rd.fail(base + "/atoms", e.what());
  }
}

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  try {
    doc.root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what(), line_at(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  doc.locator = JsonLocator(text);
  return doc;
}

ProblemInput parse_problem(const Document& doc, std::optional<double> beta_override) {
  return parse_problem_impl(Reader(doc.locator), doc.root, "", beta_override);
}

Weight parse_weight(const json& j, int n, const JsonLocator& loc, const std::string& pointer,
                    std::optional<double> beta_override) {
  return parse_weight_impl(Reader(loc), j, n, pointer, beta_override);
}

json to_json(const Weight& w) {
  json j{{"kind", to_string(w.kind())}, {"beta", w.beta()}};
  if (w.kind() == WeightKind::constant) j["value"] = w.value();
  if (w.kind() == WeightKind::radial_profile) {
    json p = json::array();
    for (const auto& [r, g] : w.profile()) p.push_back({r, g});
    j["profile"] = p;
  }
  return j;
}

json to_json(const DirectionalMeasure& rho) {
  json atoms = json::array();
  for (const auto& a : rho.atoms()) atoms.push_back({{"x", vec_json(a.x)}, {"mass", a.mass}});
  return {{"dimension", rho.dimension()}, {"atoms", atoms}};
}

json to_json(const QuadratureSpec& q) {
  return {{"order", q.order}, {"mc_samples", q.mc_samples}, {"seed", q.seed}};
}

json to_json(const SolverOptions& opts) { return {{"tol", opts.tol}, {"max_iters", opts.max_iters}}; }

json to_json(const Polytope& body) {
  json verts = json::array();
  for (const auto& v : body.vertices()) verts.push_back(vec_json(v));
  json facets = json::array();
  for (const auto& f : body.facets()) {
    facets.push_back({{"normal", vec_json(f.normal.coords())},
                      {"support", f.support},
                      {"vertex_indices", f.vertex_indices},
                      {"area", f.area}});
  }
  return {{"dimension", body.dimension()}, {"vertices", verts}, {"facets", facets}};
}

json to_json(const PWLConvexFunction& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces()) pieces.push_back({{"slope", vec_json(p.slope)}, {"intercept", p.intercept}});
  json j{{"pieces", pieces}};
  if (f.domain()) {
    json verts = json::array();
    for (const auto& v : f.domain()->vertices()) verts.push_back(vec_json(v));
    j["domain"] = {{"vertices", verts}};
  } else {
    j["domain"] = nullptr;
  }
  return j;
}

json to_json(const SolveReport& rep) {
  return {{"h", vec_json(rep.h)},
          {"supports", vec_json(rep.supports)},
          {"c", rep.c},
          {"mu", rep.mu},
          {"residuals", vec_json(rep.residuals)},
          {"max_relative_residual", rep.max_relative_residual},
          {"iterations", rep.iterations},
          {"newton_steps", rep.newton_steps},
          {"energy_trace", rep.energy_trace},
          {"converged", rep.converged}};
}

json to_json(const VerificationReport& rep) {
  json atoms = json::array();
  for (const auto& a : rep.atoms) {
    atoms.push_back({{"x", vec_json(a.x)},
                     {"target_mass", a.target_mass},
                     {"omega", a.omega.change_of_variables},
                     {"omega_direct", a.omega.direct},
                     {"relative_error", a.relative_error},
                     {"route_gap", a.route_gap},
                     {"facet_weight", a.omega.facet_weight},
                     {"normal_factor", a.omega.normal_factor}});
  }
  return {{"atoms", atoms},
          {"c_u", rep.c_u},
          {"max_relative_error", rep.max_relative_error},
          {"max_route_gap", rep.max_route_gap},
          {"total_target", rep.total_target},
          {"total_omega", rep.total_omega},
          {"tolerance", rep.tolerance},
          {"route_tolerance", rep.route_tolerance},
          {"solver_converged", rep.solver_converged},
          {"passed", rep.passed}};
}

json to_json(const AdmissibilityScan& scan) {
  json rows = json::array();
  for (const auto& r : scan.rows) rows.push_back({{"r", r.r}, {"mass", r.mass}, {"ratio", r.ratio}});
  return {{"rows", rows},
          {"slope_at_zero", scan.slope_at_zero},
          {"slope_at_infinity", scan.slope_at_infinity},
          {"blows_up_at_zero", scan.blows_up_at_zero},
          {"decays_at_infinity", scan.decays_at_infinity},
          {"pass", scan.pass()}};
}

json to_json(const radial::ResidualReport& rep, bool with_samples) {
  json j{{"r", rep.r},
         {"n", rep.n},
         {"a", rep.a},
         {"c_u", rep.c_u},
         {"max_relative_residual", rep.max_relative_residual},
         {"max_gradient_fd_error", rep.max_gradient_fd_error},
         {"max_hessian_det_fd_error", rep.max_hessian_det_fd_error},
         {"max_conjugate_error", rep.max_conjugate_error},
         {"max_phi_deviation", rep.max_phi_deviation},
         {"alt_rhs_max_relative_gap", rep.alt_rhs_max_relative_gap},
         {"rhs_note", rep.rhs_note}};
  if (with_samples) {
    json s = json::array();
    for (const auto& p : rep.samples)
      s.push_back({{"x_norm", p.x_norm}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"alt_rhs", p.alt_rhs}});
    j["samples"] = s;
  }
  return j;
}

Polytope polytope_from_json(const json& j) {
  std::vector<Direction> normals;
  std::vector<double> supports;
  for (const auto& f : j.at("facets")) {
    const auto c = f.at("normal").get<std::vector<double>>();
    normals.emplace_back(Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())));
    supports.push_back(f.at("support").get<double>());
  }
  return build_polytope(normals, supports);
}

PWLConvexFunction pwl_from_json(const json& j) {
  std::vector<AffinePiece> pieces;
  int dim = 0;
  for (const auto& p : j.at("pieces")) {
    const auto s = p.at("slope").get<std::vector<double>>();
    dim = static_cast<int>(s.size());
    pieces.push_back({Eigen::Map<const Vec>(s.data(), dim), p.at("intercept").get<double>()});
  }
  std::optional<ConvexDomain> domain;
  if (j.contains("domain") && !j.at("domain").is_null()) {
    std::vector<Vec> verts;
    for (const auto& v : j.at("domain").at("vertices")) {
      const auto c = v.get<std::vector<double>>();
      verts.emplace_back(Eigen::Map<const Vec>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
    domain = ConvexDomain::hull_of(verts);
  }
  return PWLConvexFunction(dim, std::move(pieces), std::move(domain));
}

json solution_document(const ProblemInput& in, const SolvedInstance& inst) {
  json input = to_json(in.rho);
  input["weight"] = to_json(in.weight);
  input["solver"] = to_json(in.solver);
  input["quadrature"] = to_json(in.quadrature);
  return {{"input", input},
          {"body", to_json(inst.body)},
          {"u", to_json(inst.u)},
          {"c_u", inst.c_u},
          {"report", to_json(inst.report)}};
}

StoredSolution load_solution(const Document& doc) {
  const Reader rd(doc.locator);
  rd.expect_object(doc.root, "");
  const json& input_j = rd.require(doc.root, "", "input");
  ProblemInput in = parse_problem_impl(rd, input_j, "/input", std::nullopt);
  const json& body_j = rd.require(doc.root, "", "body");
  rd.expect_object(body_j, "/body");
  const json& facets = rd.require(body_j, "/body", "facets");
  if (!facets.is_array()) rd.fail("/body/facets", "expected an array");

  const int d = in.rho.dimension() + 1;
  std::vector<double> supports;
  for (std::size_t i = 0; i < facets.size(); ++i) {
    const std::string p = "/body/facets/" + std::to_string(i);
    rd.expect_object(facets[i], p);
    rd.vector(rd.require(facets[i], p, "normal"), p + "/normal", d);
    supports.push_back(rd.positive(rd.require(facets[i], p, "support"), p + "/support"));
  }
  if (supports.size() != 2 * in.rho.atoms().size())
    rd.fail("/body/facets", "expected one facet per lifted atom and antipode");
  Vec h = Eigen::Map<const Vec>(supports.data(), static_cast<Eigen::Index>(supports.size()));
  SolvedInstance inst = instance_from_supports(in.rho, in.weight, in.quadrature, h);
  if (doc.root.contains("report") && doc.root.at("report").contains("converged"))
    inst.report.converged = doc.root.at("report").at("converged").get<bool>();
  return StoredSolution{std::move(in), std::move(inst)};
}

}  // namespace wmink::io
