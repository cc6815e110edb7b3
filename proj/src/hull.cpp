#include "wmink/hull.hpp"

#include "wmink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <utility>

namespace wmink::hull {

namespace {

double orient(const Eigen::Vector2d& o, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d u = a - o;
  const Eigen::Vector2d w = b - o;
  const double norm = u.norm() * w.norm();
  if (norm == 0.0) return 0.0;
  return (u.x() * w.y() - u.y() * w.x()) / norm;
}

}  // namespace

std::vector<int> convex_hull_2d(std::span<const Eigen::Vector2d> points, double tol) {
  const int n = static_cast<int>(points.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (points[i].x() != points[j].x()) return points[i].x() < points[j].x();
    if (points[i].y() != points[j].y()) return points[i].y() < points[j].y();
    return i < j;
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](int i, int j) { return points[i] == points[j]; }),
              order.end());
  if (order.size() < 3) return order;

  std::vector<int> hull(2 * order.size());
  std::size_t k = 0;
  for (int idx : order) {
    while (k >= 2 && orient(points[hull[k - 2]], points[hull[k - 1]], points[idx]) <= tol) --k;
    hull[k++] = idx;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower && orient(points[hull[k - 2]], points[hull[k - 1]], points[*it]) <= tol) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

namespace {

HullFace make_face(std::span<const Eigen::Vector3d> pts, int a, int b, int c,
                   const Eigen::Vector3d& interior) {
  HullFace f{{a, b, c}, Eigen::Vector3d::Zero(), 0.0};
  Eigen::Vector3d nrm = (pts[b] - pts[a]).cross(pts[c] - pts[a]);
  const double len = nrm.norm();
  nrm = len > 0.0 ? Eigen::Vector3d(nrm / len) : Eigen::Vector3d::Zero();
  f.normal = nrm;
  f.offset = nrm.dot(pts[a]);
  if (f.normal.dot(interior) - f.offset > 0.0) {
    std::swap(f.v[1], f.v[2]);
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  return f;
}

}  // namespace

std::vector<HullFace> convex_hull_3d(std::span<const Eigen::Vector3d> pts, double tol) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DegenerateHull("need at least 4 points for a 3D hull");

  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  if (scale == 0.0) throw DegenerateHull("all points coincide");
  const double eps = tol * scale;

  int i0 = 0;
  for (int i = 1; i < n; ++i)
    if (pts[i].x() < pts[i0].x()) i0 = i;
  int i1 = -1;
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  if (i1 < 0 || best <= eps) throw DegenerateHull("points coincide within tolerance");
  const Eigen::Vector3d dir = (pts[i1] - pts[i0]).normalized();
  int i2 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).cross(dir).norm();
    if (d > best) best = d, i2 = i;
  }
  if (i2 < 0 || best <= eps) throw DegenerateHull("points are collinear within tolerance");
  const Eigen::Vector3d pn = (pts[i1] - pts[i0]).cross(pts[i2] - pts[i0]).normalized();
  int i3 = -1;
  best = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(pn.dot(pts[i] - pts[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (i3 < 0 || best <= eps) throw DegenerateHull("points are coplanar within tolerance");

  const Eigen::Vector3d interior = (pts[i0] + pts[i1] + pts[i2] + pts[i3]) / 4.0;
  std::vector<HullFace> faces{make_face(pts, i0, i1, i2, interior), make_face(pts, i0, i1, i3, interior),
                              make_face(pts, i0, i2, i3, interior), make_face(pts, i1, i2, i3, interior)};

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<char> visible(faces.size(), 0);
    bool any = false;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (faces[f].normal.dot(pts[p]) - faces[f].offset > eps) visible[f] = 1, any = true;
    }
    if (!any) continue;

    std::set<std::pair<int, int>> edges;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) edges.emplace(v[e], v[(e + 1) % 3]);
    }
    std::vector<HullFace> next;
    next.reserve(faces.size() + 4);
    for (std::size_t f = 0; f < faces.size(); ++f)
      if (!visible[f]) next.push_back(faces[f]);
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!visible[f]) continue;
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) {
        const int a = v[e];
        const int b = v[(e + 1) % 3];
        if (!edges.contains({b, a})) next.push_back(make_face(pts, a, b, p, interior));
      }
    }
    faces = std::move(next);
  }
  return faces;
}

}  // namespace wmink::hull
