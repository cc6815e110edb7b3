#pragma once

#include "wmink/geometry.hpp"
#include "wmink/pwl.hpp"

#include <vector>

namespace wmink {

/**
 * u(y) = max over vertices p = (p', t) of K of y . p' - t, which is the
 * support function of K at (y, -1). Vertices that are not incident to a
 * downward facet never attain the max and are dropped.
 */
PWLConvexFunction build_u(const Polytope& body);

/**
 * Generators of the subdifferential at x: slopes of the pieces within
 * `tol` (relative to the value) of the max, deduplicated. Throws
 * OutsideDomain when x is outside the effective domain.
 */
std::vector<Vec> subgradient(const PWLConvexFunction& f, const Vec& x, double tol = 1e-10);

/**
 * Exact conjugate f*(x) = sup_y x . y - f(y).
 *
 * The sup is attained at a vertex of the cell complex of f, so f* is the max
 * of x . y_k - f(y_k) over those vertices. Its domain is the hull of the
 * slopes when f is finite everywhere, and all of R^n when f has a bounded
 * domain. Throws DegenerateHull when the slopes of an everywhere-finite f in
 * R^2 are collinear.
 */
PWLConvexFunction legendre_transform(const PWLConvexFunction& f);

}  // namespace wmink
