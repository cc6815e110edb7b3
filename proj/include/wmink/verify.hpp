#pragma once

#include "wmink/envelope.hpp"
#include "wmink/geometry.hpp"
#include "wmink/lift.hpp"
#include "wmink/measure.hpp"
#include "wmink/minkowski.hpp"

#include <vector>

namespace wmink {

/// Output of the full pipeline: lifted target, solved body, u = w* and c_u.
struct SolvedInstance {
  DirectionalMeasure rho;
  MinkowskiTarget target;
  Weight weight;
  QuadratureSpec quadrature;
  SolveReport report;
  Polytope body;
  PWLConvexFunction u;  // candidate solution
  PWLConvexFunction w;  // lower envelope of the body
  double c_u;
};

/// Lift, solve and build u. Solver non-convergence is reported in `report.converged`.
SolvedInstance solve_instance(const DirectionalMeasure& rho, const Weight& weight, const QuadratureSpec& q,
                              const SolverOptions& opts = {});

/// Rebuild an instance from stored per-normal supports (no solve).
SolvedInstance instance_from_supports(const DirectionalMeasure& rho, const Weight& weight, const QuadratureSpec& q,
                                      const Vec& supports);

struct AtomMeasure {
  double change_of_variables = 0.0;  // c F |xi . v|
  double direct = 0.0;               // integral of c phi(p, w(p)) over the subgradient image
  double facet_weight = 0.0;         // F
  double normal_factor = 0.0;        // |xi . v| = 1 / sqrt(1 + |x|^2)
};

/**
 * Weighted Monge-Ampere measure of the singleton {x} for a PWL solution,
 * evaluated twice: through the contact facet of the lifted normal, and as a
 * direct integral over the projected subgradient image. Throws
 * EmptySubgradientFacet when the facet is degenerate.
 */
AtomMeasure ma_measure_atom(const PWLConvexFunction& u, const Polytope& body, const Weight& w, double c,
                            const Vec& x, const QuadratureSpec& q);

struct AtomCheck {
  Vec x;
  double target_mass = 0.0;
  AtomMeasure omega;
  double relative_error = 0.0;
  double route_gap = 0.0;  // |direct - change_of_variables| / change_of_variables
};

struct VerificationReport {
  std::vector<AtomCheck> atoms;
  double c_u = 0.0;
  double max_relative_error = 0.0;
  double max_route_gap = 0.0;
  double total_target = 0.0;
  double total_omega = 0.0;
  double tolerance = 0.0;
  double route_tolerance = 0.0;
  bool solver_converged = false;
  bool passed = false;
};

/// Per-atom comparison of omega({x_j}) with m_j. Never throws on large errors; `passed` records the outcome.
VerificationReport verify_instance(const DirectionalMeasure& rho, const SolvedInstance& inst, double tolerance = 1e-6,
                                   double route_tolerance = 1e-7);

}  // namespace wmink
