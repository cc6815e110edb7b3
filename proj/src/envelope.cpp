#include "wmink/envelope.hpp"

#include "wmink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wmink {

PWLConvexFunction build_u(const Polytope& body) {
  const int d = body.dimension();
  const int n = d - 1;
  std::vector<char> lower(body.vertices().size(), 0);
  for (const auto& f : body.facets()) {
    if (f.normal[d - 1] >= -1e-12) continue;
    for (int i : f.vertex_indices) lower[i] = 1;
  }
  std::vector<AffinePiece> pieces;
  for (std::size_t i = 0; i < body.vertices().size(); ++i) {
    if (!lower[i]) continue;
    const Vec& p = body.vertices()[i];
    pieces.push_back({p.head(n), -p(n)});
  }
  if (pieces.empty()) throw NoLowerFacets("build_u: body has no lower vertices");
  return PWLConvexFunction(n, std::move(pieces));
}

std::vector<Vec> subgradient(const PWLConvexFunction& f, const Vec& x, double tol) {
  if (!f.in_domain(x)) throw OutsideDomain("subgradient: point is outside the effective domain");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : f.pieces()) best = std::max(best, p(x));
  const double band = tol * std::max(1.0, std::abs(best));
  std::vector<Vec> out;
  for (const auto& p : f.pieces()) {
    if (p(x) < best - band) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Vec& s) {
      return (s - p.slope).norm() <= 1e-14 * std::max(1.0, s.norm());
    });
    if (!dup) out.push_back(p.slope);
  }
  return out;
}

namespace {

// a . y = b; `pieces` holds the indices of the two pieces set equal, or -1 for a domain wall.
struct Constraint {
  Vec a;
  double b;
  int pi = -1;
  int pj = -1;
};

double max_value(const PWLConvexFunction& f, const Vec& y) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : f.pieces()) best = std::max(best, p(y));
  return best;
}

}  // namespace

PWLConvexFunction legendre_transform(const PWLConvexFunction& f) {
  const int n = f.dim();
  if (n != 1 && n != 2) throw std::invalid_argument("legendre_transform: dimension must be 1 or 2");
  const auto& pcs = f.pieces();

  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < pcs.size(); ++i) {
    for (std::size_t j = i + 1; j < pcs.size(); ++j) {
      Vec a = pcs[i].slope - pcs[j].slope;
      if (a.norm() <= 1e-14 * std::max(1.0, pcs[i].slope.norm())) continue;
      cons.push_back({std::move(a), pcs[j].intercept - pcs[i].intercept, static_cast<int>(i), static_cast<int>(j)});
    }
  }
  if (f.domain())
    for (const auto& hs : f.domain()->halfspaces()) cons.push_back({hs.normal, hs.offset});

  std::vector<Vec> cand;
  auto consider = [&](const Vec& y, std::initializer_list<const Constraint*> used) {
    if (!y.allFinite() || !f.in_domain(y, 1e-9)) return;
    const double best = max_value(f, y);
    const double band = 1e-9 * std::max(1.0, std::abs(best));
    for (const Constraint* c : used) {
      if (c->pi >= 0 && (pcs[c->pi](y) < best - band || pcs[c->pj](y) < best - band)) return;
    }
    for (const auto& z : cand)
      if ((z - y).norm() <= 1e-12 * std::max(1.0, y.norm())) return;
    cand.push_back(y);
  };

  if (n == 1) {
    for (const auto& c : cons) consider(Vec::Constant(1, c.b / c.a(0)), {&c});
  } else {
    for (std::size_t i = 0; i < cons.size(); ++i) {
      for (std::size_t j = i + 1; j < cons.size(); ++j) {
        const auto& c1 = cons[i];
        const auto& c2 = cons[j];
        const double det = c1.a(0) * c2.a(1) - c1.a(1) * c2.a(0);
        if (std::abs(det) <= 1e-14 * c1.a.norm() * c2.a.norm()) continue;
        Vec y(2);
        y << (c1.b * c2.a(1) - c2.b * c1.a(1)) / det, (c1.a(0) * c2.b - c2.a(0) * c1.b) / det;
        consider(y, {&c1, &c2});
      }
    }
  }

  std::optional<ConvexDomain> dual_domain;
  if (!f.domain()) {
    std::vector<Vec> slopes;
    for (const auto& p : pcs) slopes.push_back(p.slope);
    dual_domain = ConvexDomain::hull_of(slopes);
  }

  std::vector<AffinePiece> out;
  if (cand.empty()) {
    // every slope coincides: f is affine and f* lives on a single point
    if (n == 2 || f.domain()) throw DegenerateHull("legendre_transform: conjugate has no vertex pieces");
    double b = -std::numeric_limits<double>::infinity();
    for (const auto& p : pcs) b = std::max(b, p.intercept);
    out.push_back({Vec::Zero(1), -b});
  } else {
    for (const auto& y : cand) out.push_back({y, -max_value(f, y)});
  }
  return PWLConvexFunction(n, std::move(out), std::move(dual_domain));
}

}  // namespace wmink
