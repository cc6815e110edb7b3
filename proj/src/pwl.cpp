#include "wmink/pwl.hpp"

#include "wmink/errors.hpp"
#include "wmink/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace wmink {

ConvexDomain ConvexDomain::hull_of(std::span<const Vec> points, double tol) {
  if (points.empty()) throw std::invalid_argument("ConvexDomain: no points");
  ConvexDomain d;
  d.dim_ = static_cast<int>(points.front().size());
  if (d.dim_ == 1) {
    double lo = points.front()(0), hi = lo;
    for (const auto& p : points) lo = std::min(lo, p(0)), hi = std::max(hi, p(0));
    d.vertices_ = {Vec::Constant(1, lo), Vec::Constant(1, hi)};
    d.halfspaces_ = {{Vec::Constant(1, -1.0), -lo}, {Vec::Constant(1, 1.0), hi}};
    return d;
  }
  if (d.dim_ != 2) throw std::invalid_argument("ConvexDomain: only dimensions 1 and 2 are supported");

  std::vector<Eigen::Vector2d> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p(0), p(1));
  const auto idx = hull::convex_hull_2d(pts, tol);
  if (idx.size() < 3) throw DegenerateHull("ConvexDomain: points are collinear");
  for (int i : idx) d.vertices_.push_back(points[i]);
  const std::size_t m = d.vertices_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& a = d.vertices_[i];
    const Vec& b = d.vertices_[(i + 1) % m];
    Vec nrm(2);
    nrm << (b(1) - a(1)), -(b(0) - a(0));
    nrm.normalize();
    d.halfspaces_.push_back({nrm, nrm.dot(a)});
  }
  return d;
}

bool ConvexDomain::contains(const Vec& x, double tol) const {
  double scale = 1.0;
  for (const auto& v : vertices_) scale = std::max(scale, v.norm());
  for (const auto& hs : halfspaces_)
    if (hs.normal.dot(x) > hs.offset + tol * scale) return false;
  return true;
}

double ConvexDomain::inradius_about_origin() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& hs : halfspaces_) r = std::min(r, hs.offset);
  return r;
}

double ConvexDomain::volume() const {
  if (dim_ == 1) return vertices_[1](0) - vertices_[0](0);
  double a = 0.0;
  const std::size_t m = vertices_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Vec& p = vertices_[i];
    const Vec& q = vertices_[(i + 1) % m];
    a += p(0) * q(1) - p(1) * q(0);
  }
  return 0.5 * a;
}

PWLConvexFunction::PWLConvexFunction(int dim, std::vector<AffinePiece> pieces, std::optional<ConvexDomain> domain)
    : dim_(dim), pieces_(std::move(pieces)), domain_(std::move(domain)) {
  if (pieces_.empty()) throw std::invalid_argument("PWLConvexFunction: at least one piece is required");
  for (const auto& p : pieces_)
    if (p.slope.size() != dim_) throw std::invalid_argument("PWLConvexFunction: slope dimension mismatch");
  if (domain_ && domain_->dim() != dim_) throw std::invalid_argument("PWLConvexFunction: domain dimension mismatch");
}

bool PWLConvexFunction::in_domain(const Vec& x, double tol) const {
  return !domain_ || domain_->contains(x, tol);
}

double PWLConvexFunction::operator()(const Vec& x) const {
  if (!in_domain(x)) return std::numeric_limits<double>::infinity();
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) best = std::max(best, p(x));
  return best;
}

double PWLConvexFunction::max_slope_norm() const {
  double m = 0.0;
  for (const auto& p : pieces_) m = std::max(m, p.slope.norm());
  return m;
}

}  // namespace wmink
