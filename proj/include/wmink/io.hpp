#pragma once

#include "wmink/geometry.hpp"
#include "wmink/json_locator.hpp"
#include "wmink/lift.hpp"
#include "wmink/measure.hpp"
#include "wmink/minkowski.hpp"
#include "wmink/pwl.hpp"
#include "wmink/radial.hpp"
#include "wmink/verify.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace wmink::io {

using json = nlohmann::json;

/// Parsed JSON plus line lookup. Throws SchemaError (with line) on malformed text.
struct Document {
  json root;
  JsonLocator locator;
};
Document parse_document(const std::string& text);

/**
 * Problem input:
 *   {"dimension": n, "atoms": [{"x": [...], "mass": m}, ...], "weight": {...},
 *    "solver"?: {"tol", "max_iters"}, "quadrature"?: {"order", "mc_samples", "seed"}}
 * Unknown keys are rejected.
 */
struct ProblemInput {
  DirectionalMeasure rho;
  Weight weight;
  SolverOptions solver;
  QuadratureSpec quadrature;
};
ProblemInput parse_problem(const Document& doc, std::optional<double> beta_override = std::nullopt);

/// {"kind": "gaussian"|"constant"|"radial_profile", "value"?, "profile"?, "beta"?}
Weight parse_weight(const json& j, int n, const JsonLocator& loc, const std::string& pointer,
                    std::optional<double> beta_override = std::nullopt);

json to_json(const Weight& w);
json to_json(const DirectionalMeasure& rho);
json to_json(const QuadratureSpec& q);
json to_json(const SolverOptions& opts);
json to_json(const Polytope& body);
json to_json(const PWLConvexFunction& f);
json to_json(const SolveReport& rep);
json to_json(const VerificationReport& rep);
json to_json(const AdmissibilityScan& scan);
json to_json(const radial::ResidualReport& rep, bool with_samples = false);

/// Rebuilds a polytope from the stored facet normals and supports.
Polytope polytope_from_json(const json& j);
PWLConvexFunction pwl_from_json(const json& j);

/// solution.json: input echo, options, body, u, c_u and the solver report.
json solution_document(const ProblemInput& in, const SolvedInstance& inst);

/// Instance rebuilt from a solution document (supports read back, nothing re-solved).
struct StoredSolution {
  ProblemInput input;
  SolvedInstance instance;
};
StoredSolution load_solution(const Document& doc);

}  // namespace wmink::io
