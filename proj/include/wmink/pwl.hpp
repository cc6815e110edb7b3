#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <vector>

namespace wmink {

using Vec = Eigen::VectorXd;

/// x -> slope . x + intercept
struct AffinePiece {
  Vec slope;
  double intercept = 0.0;

  double operator()(const Vec& x) const { return slope.dot(x) + intercept; }
};

/// Closed halfspace {x : normal . x <= offset} with unit normal.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

/**
 * Bounded convex polytope in R^n, n in {1, 2}.
 *
 * For n = 1 the vertices are {lo, hi}; for n = 2 they are the strict hull
 * vertices in counterclockwise order. A single point is allowed.
 */
class ConvexDomain {
 public:
  /// Convex hull of the given points.
  static ConvexDomain hull_of(std::span<const Vec> points, double tol = 1e-10);

  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }

  bool contains(const Vec& x, double tol = 1e-10) const;
  /// Largest r with the ball B(0, r) inside the domain; negative if 0 is outside.
  double inradius_about_origin() const;
  /// n-dimensional volume (length for n = 1, area for n = 2).
  double volume() const;

 private:
  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Halfspace> halfspaces_;
};

/**
 * Convex function given as the max of affine pieces, +inf outside an
 * optional bounded domain (the whole of R^n when no domain is recorded).
 */
class PWLConvexFunction {
 public:
  PWLConvexFunction(int dim, std::vector<AffinePiece> pieces, std::optional<ConvexDomain> domain = std::nullopt);

  int dim() const { return dim_; }
  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  const std::optional<ConvexDomain>& domain() const { return domain_; }

  bool in_domain(const Vec& x, double tol = 1e-10) const;
  /// Value at x; +inf outside the domain.
  double operator()(const Vec& x) const;
  /// Lipschitz constant of the max of the pieces.
  double max_slope_norm() const;

 private:
  int dim_;
  std::vector<AffinePiece> pieces_;
  std::optional<ConvexDomain> domain_;
};

}  // namespace wmink
