#include "wmink/geometry.hpp"

#include "wmink/errors.hpp"
#include "wmink/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wmink {

Direction::Direction(const Vec& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("Direction: zero or non-finite vector");
  coords_ = v / n;
}

Direction Direction::operator-() const {
  Direction d = *this;
  d.coords_ = -d.coords_;
  return d;
}

double Direction::angle_to(const Direction& other) const {
  return 2.0 * std::atan2((coords_ - other.coords_).norm(), (coords_ + other.coords_).norm());
}

Polytope::Polytope(int dimension, std::vector<Vec> vertices, std::vector<Facet> facets)
    : dimension_(dimension), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

double Polytope::support_function(const Vec& xi) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) best = std::max(best, xi.dot(v));
  return best;
}

int Polytope::find_normal(const Direction& xi, double angle_tol) const {
  if (xi.dim() != dimension_) return -1;
  for (std::size_t i = 0; i < facets_.size(); ++i)
    if (facets_[i].normal.angle_to(xi) <= angle_tol) return static_cast<int>(i);
  return -1;
}

namespace {

/// Vertex of K where the planes of the given construction normals meet.
Vec solve_vertex(std::span<const Direction> normals, std::span<const double> supports,
                 std::span<const int> which) {
  const int d = static_cast<int>(which.size());
  Eigen::MatrixXd a(d, d);
  Vec rhs(d);
  for (int r = 0; r < d; ++r) {
    a.row(r) = normals[which[r]].coords().transpose();
    rhs(r) = supports[which[r]];
  }
  return a.fullPivLu().solve(rhs);
}

void order_facet(Facet& f, const std::vector<Vec>& verts, int dim) {
  auto& idx = f.vertex_indices;
  const Vec& xi = f.normal.coords();
  if (dim == 2) {
    Vec t(2);
    t << -xi(1), xi(0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return t.dot(verts[a]) < t.dot(verts[b]); });
    if (idx.size() >= 2) f.area = t.dot(verts[idx.back()]) - t.dot(verts[idx.front()]);
  } else {
    Eigen::Vector3d n3(xi(0), xi(1), xi(2));
    Eigen::Vector3d e1 = std::abs(n3.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    e1 = (e1 - e1.dot(n3) * n3).normalized();
    const Eigen::Vector3d e2 = n3.cross(e1);
    Vec c = Vec::Zero(3);
    for (int i : idx) c += verts[i];
    c /= static_cast<double>(std::max<std::size_t>(idx.size(), 1));
    auto angle = [&](int i) {
      const Eigen::Vector3d r = (verts[i] - c).head<3>();
      return std::atan2(r.dot(e2), r.dot(e1));
    };
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return angle(a) < angle(b); });
    if (idx.size() >= 3) {
      double area = 0.0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const Eigen::Vector3d p = (verts[idx[k]] - c).head<3>();
        const Eigen::Vector3d q = (verts[idx[(k + 1) % idx.size()]] - c).head<3>();
        area += 0.5 * n3.dot(p.cross(q));
      }
      f.area = std::max(area, 0.0);
    }
  }
  f.vertices.clear();
  for (int i : idx) f.vertices.push_back(verts[i]);
}

}  // namespace

Polytope build_polytope(std::span<const Direction> normals, std::span<const double> supports,
                        const GeometryTolerances& tol) {
  if (normals.size() != supports.size()) throw std::invalid_argument("build_polytope: normals/supports size mismatch");
  if (normals.empty()) throw DegenerateHull("build_polytope: no normals");
  const int dim = normals.front().dim();
  if (dim != 2 && dim != 3) throw std::invalid_argument("build_polytope: ambient dimension must be 2 or 3");
  const int m = static_cast<int>(normals.size());
  for (int i = 0; i < m; ++i) {
    if (normals[i].dim() != dim) throw std::invalid_argument("build_polytope: mixed dimensions");
    if (!(supports[i] > 0.0) || !std::isfinite(supports[i]))
      throw std::invalid_argument("build_polytope: supports must be positive and finite");
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (normals[i].angle_to(normals[j]) <= tol.parallel)
        throw std::invalid_argument("build_polytope: normals " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are parallel within tolerance");
  if (m < dim + 1) throw DegenerateHull("build_polytope: need at least n+2 normals");

  double scale = 0.0;
  std::vector<Vec> raw;
  if (dim == 2) {
    std::vector<Eigen::Vector2d> pts(m);
    for (int i = 0; i < m; ++i) {
      pts[i] = normals[i].coords().head<2>() / supports[i];
      scale = std::max(scale, pts[i].norm());
    }
    const auto idx = hull::convex_hull_2d(pts, tol.orientation);
    if (idx.size() < 3) throw DegenerateHull("build_polytope: dual points are collinear");
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const int a = idx[k];
      const int b = idx[(k + 1) % idx.size()];
      const Eigen::Vector2d e = pts[b] - pts[a];
      const Eigen::Vector2d out = Eigen::Vector2d(e.y(), -e.x()).normalized();
      if (out.dot(pts[a]) <= tol.orientation * scale)
        throw UnboundedBody("build_polytope: normals do not positively span the plane");
      const int which[2] = {a, b};
      raw.push_back(solve_vertex(normals, supports, which));
    }
  } else {
    std::vector<Eigen::Vector3d> pts(m);
    for (int i = 0; i < m; ++i) {
      pts[i] = normals[i].coords().head<3>() / supports[i];
      scale = std::max(scale, pts[i].norm());
    }
    const auto faces = hull::convex_hull_3d(pts, tol.orientation);
    for (const auto& f : faces) {
      if (f.offset <= tol.orientation * scale)
        throw UnboundedBody("build_polytope: normals do not positively span R^3");
      raw.push_back(solve_vertex(normals, supports, f.v));
    }
  }

  double body_scale = 0.0;
  for (const auto& v : raw) body_scale = std::max(body_scale, v.norm());
  std::vector<Vec> verts;
  for (const auto& v : raw) {
    const bool dup = std::any_of(verts.begin(), verts.end(),
                                 [&](const Vec& w) { return (w - v).norm() <= tol.merge * body_scale; });
    if (!dup) verts.push_back(v);
  }

  std::vector<Facet> facets;
  facets.reserve(m);
  for (int i = 0; i < m; ++i) {
    Facet f{normals[i], supports[i], {}, {}, 0.0};
    const double band = tol.contact * std::max(1.0, supports[i]);
    for (int j = 0; j < static_cast<int>(verts.size()); ++j)
      if (std::abs(normals[i].dot(verts[j]) - supports[i]) <= band) f.vertex_indices.push_back(j);
    order_facet(f, verts, dim);
    facets.push_back(std::move(f));
  }
  return Polytope(dim, std::move(verts), std::move(facets));
}

const Facet& facet_for_normal(const Polytope& body, const Direction& xi) {
  const int i = body.find_normal(xi);
  if (i < 0) throw UnknownNormal("facet_for_normal: direction is not a construction normal");
  return body.facets()[i];
}

Polytope polar(const Polytope& body, const GeometryTolerances& tol) {
  std::vector<Direction> normals;
  std::vector<double> supports;
  for (const auto& v : body.vertices()) {
    normals.emplace_back(v);
    supports.push_back(1.0 / v.norm());
  }
  return build_polytope(normals, supports, tol);
}

PWLConvexFunction lower_envelope(const Polytope& body) {
  const int d = body.dimension();
  const int n = d - 1;
  std::vector<AffinePiece> pieces;
  for (const auto& f : body.facets()) {
    const double s = f.normal[d - 1];
    if (s >= -1e-12) continue;
    pieces.push_back({f.normal.coords().head(n) / (-s), f.support / s});
  }
  if (pieces.empty()) throw NoLowerFacets("lower_envelope: no facet normal points downward");
  std::vector<Vec> proj;
  for (const auto& v : body.vertices()) proj.push_back(v.head(n));
  return PWLConvexFunction(n, std::move(pieces), ConvexDomain::hull_of(proj));
}

}  // namespace wmink
