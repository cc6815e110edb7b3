#include "wmink/lift.hpp"

#include "wmink/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wmink {

DirectionalMeasure::DirectionalMeasure(int n, std::vector<Atom> atoms, double merge_tol) : n_(n) {
  if (n != 1 && n != 2) throw std::invalid_argument("DirectionalMeasure: dimension must be 1 or 2");
  for (auto& a : atoms) {
    if (a.x.size() != n) throw std::invalid_argument("DirectionalMeasure: atom has wrong dimension");
    if (!a.x.allFinite()) throw std::invalid_argument("DirectionalMeasure: atom position is not finite");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass))
      throw std::invalid_argument("DirectionalMeasure: atom masses must be positive and finite");
    bool merged = false;
    for (auto& b : atoms_) {
      if ((b.x - a.x).norm() <= merge_tol) {
        b.mass += a.mass;
        merged = true;
        break;
      }
    }
    if (!merged) atoms_.push_back(std::move(a));
  }
  if (atoms_.empty()) throw std::invalid_argument("DirectionalMeasure: no atoms");
}

double DirectionalMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

double DirectionalMeasure::first_moment() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.x.norm() * a.mass;
  return s;
}

bool DirectionalMeasure::concentrated_on_hyperplane(double tol) const {
  if (static_cast<int>(atoms_.size()) < n_ + 1) return true;
  Eigen::MatrixXd m(atoms_.size(), n_ + 1);
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    m.row(j).head(n_) = atoms_[j].x.transpose();
    m(j, n_) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return sv(n_) <= tol * sv(0);
}

Direction lift_point(const Vec& x) {
  Vec y(x.size() + 1);
  y.head(x.size()) = x;
  y(x.size()) = -1.0;
  return Direction(y / std::sqrt(1.0 + x.squaredNorm()));
}

Vec unlift(const Direction& xi) {
  const int n = xi.dim() - 1;
  const double s = xi[n];
  if (!(s < 0.0)) throw std::invalid_argument("unlift: direction is not in the open lower hemisphere");
  return xi.coords().head(n) / (-s);
}

DirectionalMeasure build_rho_prime(const DirectionalMeasure& rho) {
  std::vector<Atom> atoms = rho.atoms();
  for (auto& a : atoms) a.mass *= std::sqrt(1.0 + a.x.squaredNorm());
  return DirectionalMeasure(rho.dimension(), std::move(atoms), 0.0);
}

MinkowskiTarget symmetrized_lift(const DirectionalMeasure& rho) {
  if (rho.concentrated_on_hyperplane())
    throw ConcentratedOnHyperplane("input measure is concentrated on an affine hyperplane of R^" +
                                   std::to_string(rho.dimension()) + "; the lifted measure would lie on a great subsphere");
  const DirectionalMeasure prime = build_rho_prime(rho);
  std::vector<Direction> normals;
  std::vector<double> masses;
  for (const auto& a : prime.atoms()) {
    const Direction xi = lift_point(a.x);
    normals.push_back(xi);
    normals.push_back(-xi);
    masses.push_back(a.mass);
    masses.push_back(a.mass);
  }
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j)
      if (normals[i].angle_to(normals[j]) <= 1e-9)
        throw InvalidTarget("lifted normals " + std::to_string(i) + " and " + std::to_string(j) + " collide");
  return MinkowskiTarget(std::move(normals), std::move(masses));
}

}  // namespace wmink
