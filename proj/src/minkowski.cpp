#include "wmink/minkowski.hpp"

#include "wmink/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wmink {

MinkowskiTarget::MinkowskiTarget(std::vector<Direction> normals, std::vector<double> masses)
    : normals_(std::move(normals)), masses_(std::move(masses)) {
  if (normals_.empty()) throw InvalidTarget("target has no normals");
  if (normals_.size() != masses_.size()) throw InvalidTarget("normals/masses size mismatch");
  const int d = normals_.front().dim();
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    if (normals_[i].dim() != d) throw InvalidTarget("mixed normal dimensions");
    if (!(masses_[i] > 0.0) || !std::isfinite(masses_[i])) throw InvalidTarget("masses must be positive and finite");
  }

  constexpr double kAntipodeTol = 1e-9;
  std::vector<int> partner(normals_.size(), -1);
  for (std::size_t i = 0; i < normals_.size(); ++i) {
    if (partner[i] >= 0) continue;
    const Direction anti = -normals_[i];
    int found = -1;
    for (std::size_t j = 0; j < normals_.size(); ++j) {
      if (j == i || partner[j] >= 0) continue;
      if (normals_[j].angle_to(anti) <= kAntipodeTol) {
        if (found >= 0) throw InvalidTarget("normal " + std::to_string(i) + " has several antipodes");
        found = static_cast<int>(j);
      }
    }
    if (found < 0) throw InvalidTarget("normal " + std::to_string(i) + " has no antipode; target must be even");
    if (masses_[i] != masses_[found])
      throw InvalidTarget("antipodal normals " + std::to_string(i) + " and " + std::to_string(found) +
                          " carry different masses");
    partner[i] = found;
    partner[found] = static_cast<int>(i);
    pairs_.emplace_back(static_cast<int>(i), found);
  }

  Eigen::MatrixXd m(normals_.size(), d);
  for (std::size_t i = 0; i < normals_.size(); ++i) m.row(i) = normals_[i].coords().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(d - 1) <= 1e-10 * sv(0))
    throw ConcentratedOnHyperplane("target normals do not span R^" + std::to_string(d) +
                                   " (measure concentrated on a great subsphere)");
}

double MinkowskiTarget::max_mass() const { return *std::max_element(masses_.begin(), masses_.end()); }

Vec MinkowskiTarget::expand(const Vec& pair_values) const {
  Vec out(normals_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    out(pairs_[k].first) = pair_values(k);
    out(pairs_[k].second) = pair_values(k);
  }
  return out;
}

Vec MinkowskiTarget::reduce(const Vec& per_normal) const {
  Vec out(pairs_.size());
  for (std::size_t k = 0; k < pairs_.size(); ++k)
    out(k) = per_normal(pairs_[k].first) + per_normal(pairs_[k].second);
  return out;
}

EnergyEval energy_and_gradient(const Vec& h, const MinkowskiTarget& target, const Weight& w,
                               const QuadratureSpec& q) {
  if (h.size() != static_cast<Eigen::Index>(target.size()))
    throw std::invalid_argument("energy_and_gradient: support vector size mismatch");
  std::vector<double> supports(h.data(), h.data() + h.size());
  Polytope body = build_polytope(target.normals(), supports);

  const int n = target.n();
  const double mu = mu_volume(body, w, q);
  const double c = c_constant_from_mass(mu, w.beta(), n);

  Vec f(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) f(i) = weighted_facet_area(body.facets()[i], w, q);
  // K(h) is centrally symmetric for even h; pair averaging makes that exact in floating point.
  for (const auto& [i, j] : target.pairs()) {
    if (h(i) != h(j)) continue;
    const double avg = 0.5 * (f(i) + f(j));
    f(i) = f(j) = avg;
  }

  const double expo = w.beta() / (n + 1);
  double linear = 0.0;
  Vec grad(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    linear += target.masses()[i] * h(i);
    grad(i) = c * f(i) - target.masses()[i];
  }
  const double energy = std::pow(mu, expo) / expo - linear;
  return EnergyEval{energy, std::move(grad), std::move(f), mu, c, std::move(body)};
}

namespace {

std::vector<int> structure_of(const Polytope& body) {
  std::vector<int> s;
  s.push_back(static_cast<int>(body.vertices().size()));
  for (const auto& f : body.facets()) s.push_back(static_cast<int>(f.vertex_indices.size()) * (f.active() ? 1 : -1));
  return s;
}

// Newton direction in pair space from a central-difference Hessian; empty when not an ascent direction.
std::optional<Vec> newton_direction(const Vec& x, const Vec& g, const MinkowskiTarget& target, const Weight& w,
                                    const QuadratureSpec& q) {
  const Eigen::Index m = x.size();
  Eigen::MatrixXd hess(m, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double delta = 1e-6 * x(k);
    Vec xp = x, xm = x;
    xp(k) += delta;
    xm(k) -= delta;
    const Vec gp = target.reduce(energy_and_gradient(target.expand(xp), target, w, q).gradient);
    const Vec gm = target.reduce(energy_and_gradient(target.expand(xm), target, w, q).gradient);
    hess.col(k) = (gp - gm) / (2.0 * delta);
  }
  const Eigen::MatrixXd neg = -0.5 * (hess + hess.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(neg);
  if (llt.info() != Eigen::Success) return std::nullopt;
  Vec d = llt.solve(g);
  if (!d.allFinite() || d.dot(g) <= 0.0) return std::nullopt;
  return d;
}

}  // namespace

SolveReport solve_minkowski(const MinkowskiTarget& target, const Weight& w, const QuadratureSpec& q,
                            const SolverOptions& opts) {
  q.validate();
  if (!(opts.tol > 0.0) || opts.max_iters < 1) throw std::invalid_argument("solve_minkowski: bad options");
  const int n = target.n();
  if (opts.check_admissibility) {
    const auto scan = admissibility_scan(w, n, log_grid(1e-3, 1e3));
    if (!scan.pass())
      throw InadmissibleWeight("weight " + to_string(w.kind()) + " with beta = " + std::to_string(w.beta()) +
                               " fails the growth-condition scan");
  }

  const double goal = opts.tol * target.max_mass();
  Vec x = Vec::Ones(static_cast<Eigen::Index>(target.pairs().size()));
  EnergyEval cur = energy_and_gradient(target.expand(x), target, w, q);
  std::vector<int> structure = structure_of(cur.body);
  int stable = 0;
  double step = 1.0;

  SolveReport rep;
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    rep.energy_trace.push_back(cur.energy);
    if (cur.gradient.lpNorm<Eigen::Infinity>() <= goal) {
      rep.converged = true;
      break;
    }
    const Vec g = target.reduce(cur.gradient);

    std::optional<Vec> newton;
    if (opts.newton_after_stable > 0 && stable >= opts.newton_after_stable)
      newton = newton_direction(x, g, target, w, q);
    const bool use_newton = newton.has_value();
    const Vec d = use_newton ? *newton : g;
    double t = use_newton ? 1.0 : step;
    const double slope = g.dot(d);
    const double slack = 1e-14 * (1.0 + std::abs(cur.energy));

    std::optional<EnergyEval> next;
    Vec xn;
    for (int tries = 0; tries < 80; ++tries, t *= 0.5) {
      xn = x + t * d;
      if (xn.minCoeff() <= 0.0) continue;
      EnergyEval trial = energy_and_gradient(target.expand(xn), target, w, q);
      const double gain = trial.energy - cur.energy;
      // Within roundoff of the current energy Armijo cannot discriminate; ask for a smaller gradient instead.
      const bool ok = std::abs(gain) <= slack
                          ? trial.gradient.lpNorm<Eigen::Infinity>() < cur.gradient.lpNorm<Eigen::Infinity>()
                          : gain >= opts.armijo_c1 * t * slope;
      if (ok) {
        next.emplace(std::move(trial));
        break;
      }
    }
    if (!next) {
      if (use_newton) {
        stable = 0;
        continue;
      }
      break;  // line search stalled
    }
    if (use_newton) {
      ++rep.newton_steps;
    } else {
      step = std::min(2.0 * t, 1e6);
    }
    x = xn;
    cur = std::move(*next);
    if (x.minCoeff() < opts.min_support)
      throw CollapsedBody("support value fell below " + std::to_string(opts.min_support) +
                          "; a facet never activated");
    auto s = structure_of(cur.body);
    stable = s == structure ? stable + 1 : 0;
    structure = std::move(s);
  }
  if (!rep.converged && cur.gradient.lpNorm<Eigen::Infinity>() <= goal) {
    rep.converged = true;
    rep.energy_trace.push_back(cur.energy);
  }

  rep.h = x;
  rep.supports = target.expand(x);
  rep.c = cur.c;
  rep.mu = cur.mu;
  rep.residuals = cur.gradient;
  rep.max_relative_residual = cur.gradient.lpNorm<Eigen::Infinity>() / target.max_mass();
  rep.iterations = iter;
  rep.body.emplace(std::move(cur.body));
  return rep;
}

ResidualReport residual_report(const Vec& h, const MinkowskiTarget& target, const Weight& w,
                               const QuadratureSpec& q) {
  const EnergyEval e = energy_and_gradient(h, target, w, q);
  ResidualReport r;
  r.residuals = e.gradient;
  r.max_abs = e.gradient.lpNorm<Eigen::Infinity>();
  r.relative_max = r.max_abs / target.max_mass();
  r.c = e.c;
  return r;
}

}  // namespace wmink
