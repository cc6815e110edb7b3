#pragma once

#include "wmink/geometry.hpp"
#include "wmink/minkowski.hpp"

#include <vector>

namespace wmink {

struct Atom {
  Vec x;
  double mass = 0.0;
};

/// Finite atomic measure on R^n, n in {1, 2}.
class DirectionalMeasure {
 public:
  /// Validates dimensions and masses; merges atoms closer than `merge_tol`, summing their masses.
  DirectionalMeasure(int n, std::vector<Atom> atoms, double merge_tol = 1e-9);

  int dimension() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const;
  double first_moment() const;

  /// True when {(x_j, 1)} has rank < n+1 (SVD, relative tolerance `tol`).
  bool concentrated_on_hyperplane(double tol = 1e-10) const;

 private:
  int n_;
  std::vector<Atom> atoms_;
};

/// x -> (x, -1) / sqrt(1 + |x|^2), onto the open lower hemisphere.
Direction lift_point(const Vec& x);

/// Inverse of lift_point on the open lower hemisphere.
Vec unlift(const Direction& xi);

/// Masses m_j sqrt(1 + |x_j|^2) on the same atoms.
DirectionalMeasure build_rho_prime(const DirectionalMeasure& rho);

/**
 * Push the reweighted measure to the lower hemisphere and add its antipodal
 * reflection. Atom j yields normals 2j (lifted) and 2j+1 (reflected). Nothing
 * is placed on the equator. Throws ConcentratedOnHyperplane.
 */
MinkowskiTarget symmetrized_lift(const DirectionalMeasure& rho);

}  // namespace wmink
