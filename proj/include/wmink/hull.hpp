#pragma once

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

/// Low-dimensional convex hulls with epsilon orientation predicates.
namespace wmink::hull {

/**
 * Strict convex hull of planar points by Andrew's monotone chain.
 *
 * Returns point indices in counterclockwise order, starting from the
 * lexicographically smallest point. Points within `tol` (normalized
 * orientation determinant) of a hull edge are dropped. Fewer than three
 * indices means the input is collinear.
 */
std::vector<int> convex_hull_2d(std::span<const Eigen::Vector2d> points, double tol = 1e-10);

struct HullFace {
  std::array<int, 3> v;  // counterclockwise seen from outside
  Eigen::Vector3d normal;  // unit, outward
  double offset;           // normal . x = offset on the face plane
};

/**
 * Convex hull of points in R^3 by incremental insertion.
 *
 * Points are inserted in index order; a face is visible from a point when
 * the point lies more than `tol * scale` above its plane, where scale is the
 * largest point norm. Coplanar configurations yield several coplanar
 * triangles. Throws DegenerateHull when no non-flat initial tetrahedron
 * exists.
 */
std::vector<HullFace> convex_hull_3d(std::span<const Eigen::Vector3d> points, double tol = 1e-10);

}  // namespace wmink::hull
