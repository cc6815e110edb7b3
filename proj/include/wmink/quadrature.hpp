#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace wmink {

using Vec = Eigen::VectorXd;

struct QuadratureSpec {
  int order = 8;              // Gauss-Legendre points per collapsed coordinate
  int mc_samples = 200000;    // Monte Carlo cross-checks
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless order >= 2 and mc_samples >= 1000.
  void validate() const;
};

/// Gauss-Legendre rule on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached; safe to call concurrently.
const GaussRule& gauss_legendre(int order);

/**
 * Integrate `f` over the k-simplex with the given k+1 vertices (embedded in
 * any R^d, k = 1, 2, 3) using the collapsed-coordinate tensor rule with
 * `order` points per coordinate. The Jacobian is the Gram volume, so the
 * rule integrates against k-dimensional Hausdorff measure.
 */
double integrate_simplex(std::span<const Vec> vertices, const std::function<double(const Vec&)>& f, int order);

/// Longest simplex edge passed to the Gauss rule for non-constant weights (unit Gaussian scale).
inline constexpr double kMaxSimplexEdge = 1.0;

/**
 * As integrate_simplex, after splitting the simplex by longest-edge bisection
 * until every edge is at most `max_edge` (or `max_depth` splits deep).
 */
double integrate_simplex_refined(std::span<const Vec> vertices, const std::function<double(const Vec&)>& f, int order,
                                 double max_edge, int max_depth = 24);

/// Uniform sample from the simplex, driven by k uniforms in [0, 1).
Vec sample_simplex(std::span<const Vec> vertices, std::span<const double> uniforms);

/// k-dimensional volume of a k-simplex embedded in R^d.
double simplex_volume(std::span<const Vec> vertices);

}  // namespace wmink
