#pragma once

#include "wmink/geometry.hpp"
#include "wmink/measure.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace wmink {

/**
 * Even atomic measure on the sphere: normals closed under xi -> -xi, equal
 * mass on antipodes, spanning R^{n+1}.
 */
class MinkowskiTarget {
 public:
  /// Throws InvalidTarget on odd or non-positive data, ConcentratedOnHyperplane if the normals do not span.
  MinkowskiTarget(std::vector<Direction> normals, std::vector<double> masses);

  int ambient_dim() const { return normals_.front().dim(); }
  int n() const { return ambient_dim() - 1; }
  std::size_t size() const { return normals_.size(); }
  const std::vector<Direction>& normals() const { return normals_; }
  const std::vector<double>& masses() const { return masses_; }
  double max_mass() const;

  /// (representative, antipode) index pairs, representative < antipode.
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  /// Per-normal supports from one value per pair.
  Vec expand(const Vec& pair_values) const;
  /// Per-pair sums of a per-normal vector.
  Vec reduce(const Vec& per_normal) const;

 private:
  std::vector<Direction> normals_;
  std::vector<double> masses_;
  std::vector<std::pair<int, int>> pairs_;
};

/// Everything computed at one support vector.
struct EnergyEval {
  double energy = 0.0;
  Vec gradient;        // per normal: c F_i - a_i
  Vec facet_weights;   // F_i
  double mu = 0.0;
  double c = 0.0;
  Polytope body;
};

/**
 * E(h) = ((n+1)/beta) mu(K(h))^(beta/(n+1)) - sum_i a_i h_i and its gradient
 * mu^(beta/(n+1)-1) F_i - a_i, using dmu(K(h))/dh_i = F_i.
 */
EnergyEval energy_and_gradient(const Vec& h, const MinkowskiTarget& target, const Weight& w,
                               const QuadratureSpec& q);

struct SolverOptions {
  double tol = 1e-8;
  int max_iters = 10000;
  double armijo_c1 = 1e-4;
  double min_support = 1e-9;
  // FD-Newton refinement once the facet structure is unchanged for this many iterations; <= 0 disables it.
  int newton_after_stable = 50;
  bool check_admissibility = true;
};

struct SolveReport {
  Vec h;          // one support per antipodal pair
  Vec supports;   // per normal
  double c = 0.0;
  double mu = 0.0;
  Vec residuals;  // per normal: c F_i - a_i
  double max_relative_residual = 0.0;
  int iterations = 0;
  int newton_steps = 0;
  std::vector<double> energy_trace;
  bool converged = false;
  std::optional<Polytope> body;
};

/**
 * Gradient ascent on E over the even cone with Armijo backtracking, starting
 * from h = 1. Stops when ||grad E||_inf <= tol * max(a). Returns the report
 * with converged = false when the iteration budget runs out or the line
 * search stalls. Throws CollapsedBody if a support drops below
 * min_support, InadmissibleWeight if the growth-condition scan fails.
 */
SolveReport solve_minkowski(const MinkowskiTarget& target, const Weight& w, const QuadratureSpec& q,
                            const SolverOptions& opts = {});

struct ResidualReport {
  Vec residuals;
  double max_abs = 0.0;
  double relative_max = 0.0;  // max_abs / max(a)
  double c = 0.0;
};

/// c F_i(h) - a_i for per-normal supports h.
ResidualReport residual_report(const Vec& h, const MinkowskiTarget& target, const Weight& w,
                               const QuadratureSpec& q);

}  // namespace wmink
