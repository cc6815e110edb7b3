#pragma once

#include "wmink/geometry.hpp"
#include "wmink/lift.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <initializer_list>
#include <numbers>
#include <random>
#include <vector>

namespace wmink::test {

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Direction dir(std::initializer_list<double> xs) { return Direction(vec(xs)); }

inline std::vector<Direction> square_normals() {
  return {dir({1, 0}), dir({-1, 0}), dir({0, 1}), dir({0, -1})};
}

inline std::vector<Direction> cube_normals() {
  return {dir({1, 0, 0}), dir({-1, 0, 0}), dir({0, 1, 0}), dir({0, -1, 0}), dir({0, 0, 1}), dir({0, 0, -1})};
}

/// 2m equiangular normals in the plane, starting at angle `phase`, antipodes adjacent.
inline std::vector<Direction> equiangular_normals(int m, double phase = 0.0) {
  std::vector<Direction> out;
  for (int k = 0; k < m; ++k) {
    const double t = phase + std::numbers::pi * k / m;
    out.push_back(dir({std::cos(t), std::sin(t)}));
    out.push_back(dir({-std::cos(t), -std::sin(t)}));
  }
  return out;
}

/// `pairs` random antipodal pairs of unit vectors in R^d, antipodes adjacent.
inline std::vector<Direction> random_even_normals(int d, int pairs, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Direction> out;
  while (static_cast<int>(out.size()) < 2 * pairs) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = g(rng);
    Direction xi(v);
    bool ok = true;
    for (const auto& o : out) ok = ok && xi.angle_to(o) > 0.2;
    if (!ok) continue;
    out.push_back(xi);
    out.push_back(-xi);
  }
  return out;
}

/// Random atoms in [-2, 2]^n with masses in [0.5, 1.5], at least 0.3 apart.
inline std::vector<Atom> random_atoms(int n, int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-2.0, 2.0), mass(0.5, 1.5);
  std::vector<Atom> atoms;
  while (static_cast<int>(atoms.size()) < count) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x(i) = pos(rng);
    bool ok = true;
    for (const auto& a : atoms) ok = ok && (a.x - x).norm() > 0.3;
    if (ok) atoms.push_back({x, mass(rng)});
  }
  return atoms;
}

/// Rotation of R^d (d = 2, 3) from angles.
inline Eigen::MatrixXd rotation(int d, double a, double b = 0.0, double c = 0.0) {
  if (d == 2) {
    Eigen::MatrixXd r(2, 2);
    r << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return r;
  }
  Eigen::Matrix3d r = (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
                       Eigen::AngleAxisd(c, Eigen::Vector3d::UnitX()))
                          .toRotationMatrix();
  return r;
}

}  // namespace wmink::test
