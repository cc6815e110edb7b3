#include "wmink/verify.hpp"

#include "wmink/errors.hpp"

#include <algorithm>
#include <cmath>

namespace wmink {

SolvedInstance solve_instance(const DirectionalMeasure& rho, const Weight& weight, const QuadratureSpec& q,
                              const SolverOptions& opts) {
  MinkowskiTarget target = symmetrized_lift(rho);
  SolveReport rep = solve_minkowski(target, weight, q, opts);
  Polytope body = *rep.body;
  PWLConvexFunction u = build_u(body);
  PWLConvexFunction w = lower_envelope(body);
  const double c = rep.c;
  return SolvedInstance{rho, std::move(target), weight, q, std::move(rep), std::move(body), std::move(u), std::move(w), c};
}

SolvedInstance instance_from_supports(const DirectionalMeasure& rho, const Weight& weight, const QuadratureSpec& q,
                                      const Vec& supports) {
  MinkowskiTarget target = symmetrized_lift(rho);
  EnergyEval e = energy_and_gradient(supports, target, weight, q);
  SolveReport rep;
  rep.supports = supports;
  rep.h = Vec(target.pairs().size());
  for (std::size_t k = 0; k < target.pairs().size(); ++k) rep.h(k) = supports(target.pairs()[k].first);
  rep.c = e.c;
  rep.mu = e.mu;
  rep.residuals = e.gradient;
  rep.max_relative_residual = e.gradient.lpNorm<Eigen::Infinity>() / target.max_mass();
  rep.energy_trace = {e.energy};
  rep.body = e.body;
  PWLConvexFunction u = build_u(e.body);
  PWLConvexFunction w = lower_envelope(e.body);
  return SolvedInstance{rho, std::move(target), weight, q, std::move(rep), std::move(e.body), std::move(u), std::move(w), e.c};
}

namespace {

AtomMeasure measure_atom(const PWLConvexFunction& u, const PWLConvexFunction& w_env, const Polytope& body,
                         const Weight& w, double c, const Vec& x, const QuadratureSpec& q) {
  const Direction xi = lift_point(x);
  const Facet& facet = facet_for_normal(body, xi);
  if (!facet.active()) throw EmptySubgradientFacet("contact facet of the lifted atom is degenerate");

  AtomMeasure m;
  m.facet_weight = weighted_facet_area(facet, w, q);
  m.normal_factor = std::abs(xi[xi.dim() - 1]);
  m.change_of_variables = c * m.facet_weight * m.normal_factor;

  const auto slopes = subgradient(u, x);
  const int n = static_cast<int>(x.size());
  if (static_cast<int>(slopes.size()) < n + 1) throw EmptySubgradientFacet("subgradient image has no interior");
  const ConvexDomain region = ConvexDomain::hull_of(slopes);
  const auto integrand = [&](const Vec& p) {
    Vec z(n + 1);
    z.head(n) = p;
    z(n) = w_env(p);
    return c * w(z);
  };
  const auto& v = region.vertices();
  double direct = 0.0;
  if (n == 1) {
    direct = integrate_simplex_refined(v, integrand, q.order, kMaxSimplexEdge);
  } else {
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
      const Vec tri[3] = {v[0], v[k], v[k + 1]};
      direct += integrate_simplex_refined(tri, integrand, q.order, kMaxSimplexEdge);
    }
  }
  m.direct = direct;
  return m;
}

}  // namespace

AtomMeasure ma_measure_atom(const PWLConvexFunction& u, const Polytope& body, const Weight& w, double c,
                            const Vec& x, const QuadratureSpec& q) {
  return measure_atom(u, lower_envelope(body), body, w, c, x, q);
}

VerificationReport verify_instance(const DirectionalMeasure& rho, const SolvedInstance& inst, double tolerance,
                                   double route_tolerance) {
  VerificationReport rep;
  rep.c_u = inst.c_u;
  rep.tolerance = tolerance;
  rep.route_tolerance = route_tolerance;
  rep.solver_converged = inst.report.converged;
  bool all_ok = true;
  for (const auto& atom : rho.atoms()) {
    AtomCheck chk;
    chk.x = atom.x;
    chk.target_mass = atom.mass;
    try {
      chk.omega = measure_atom(inst.u, inst.w, inst.body, inst.weight, inst.c_u, atom.x, inst.quadrature);
      chk.relative_error = std::abs(chk.omega.change_of_variables - atom.mass) / atom.mass;
      chk.route_gap = std::abs(chk.omega.direct - chk.omega.change_of_variables) /
                      std::max(chk.omega.change_of_variables, 1e-300);
    } catch (const EmptySubgradientFacet&) {
      // a degenerate facet carries no measure
      chk.relative_error = 1.0;
      chk.route_gap = 0.0;
      all_ok = false;
    }
    rep.total_target += atom.mass;
    rep.total_omega += chk.omega.change_of_variables;
    rep.max_relative_error = std::max(rep.max_relative_error, chk.relative_error);
    rep.max_route_gap = std::max(rep.max_route_gap, chk.route_gap);
    rep.atoms.push_back(std::move(chk));
  }
  rep.passed = all_ok && rep.max_relative_error <= tolerance && rep.max_route_gap <= route_tolerance;
  return rep;
}

}  // namespace wmink
