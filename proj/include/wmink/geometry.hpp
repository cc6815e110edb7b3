#pragma once

#include "wmink/pwl.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace wmink {

/// Unit vector in R^{n+1}.
class Direction {
 public:
  /// Normalizes `v`; throws std::invalid_argument on a zero or non-finite vector.
  explicit Direction(const Vec& v);

  const Vec& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double operator[](int i) const { return coords_(i); }
  double dot(const Vec& x) const { return coords_.dot(x); }
  Direction operator-() const;

  /// Angle to `other` in radians.
  double angle_to(const Direction& other) const;

 private:
  Vec coords_;
};

struct GeometryTolerances {
  double orientation = 1e-10;  // normalized determinants in the hulls
  double parallel = 1e-9;      // minimum angle between construction normals
  double contact = 1e-9;       // vertex-on-plane test, relative to max(1, support)
  double merge = 1e-10;        // vertex deduplication, relative to body scale
};

/**
 * Contact face of a polytope with a construction normal.
 *
 * Vertices are ordered counterclockwise about the outer normal in R^3, and
 * along the tangent (-xi_2, xi_1) in R^2. Inactive facets (the halfspace does
 * not touch the body in an n-dimensional face) have area 0.
 */
struct Facet {
  Direction normal;
  double support;
  std::vector<int> vertex_indices;
  std::vector<Vec> vertices;
  double area = 0.0;

  bool active() const { return area > 0.0; }
};

/// Bounded intersection of halfspaces {x : xi_i . x <= h_i} with the origin inside.
class Polytope {
 public:
  Polytope(int dimension, std::vector<Vec> vertices, std::vector<Facet> facets);

  int dimension() const { return dimension_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }

  double support_function(const Vec& xi) const;
  /// Index of the construction normal matching `xi` within `angle_tol`, or -1.
  int find_normal(const Direction& xi, double angle_tol = 1e-9) const;

 private:
  int dimension_;
  std::vector<Vec> vertices_;
  std::vector<Facet> facets_;
};

/**
 * Halfspace intersection through polar duality.
 *
 * The dual points xi_i / h_i are hulled (monotone chain in R^2, incremental
 * insertion in R^3); every hull face dualizes to a vertex of the body. Facet
 * contact sets are then read off by the vertex-on-plane test, so facets
 * whose halfspace is redundant are kept with area 0.
 *
 * Throws DegenerateHull when the dual points have no interior, UnboundedBody
 * when the normals do not positively span, and std::invalid_argument on bad
 * input (dimension, non-positive supports, near-parallel normals).
 */
Polytope build_polytope(std::span<const Direction> normals, std::span<const double> supports,
                        const GeometryTolerances& tol = {});

/// Reverse spherical image of a construction normal. Throws UnknownNormal.
const Facet& facet_for_normal(const Polytope& body, const Direction& xi);

/**
 * Polar body {y : x . y <= 1 for all x in K}, built from the vertices of K.
 * Applying it twice reproduces the vertex set of K.
 */
Polytope polar(const Polytope& body, const GeometryTolerances& tol = {});

/**
 * Lower boundary of K seen along the last axis: w(x) = inf{t : (x, t) in K},
 * as a max of affine pieces over dom(w) = projection of K.
 * Throws NoLowerFacets when no facet normal points downward.
 */
PWLConvexFunction lower_envelope(const Polytope& body);

}  // namespace wmink
