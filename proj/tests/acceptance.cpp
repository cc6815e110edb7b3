// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"
#include "wmink/envelope.hpp"
#include "wmink/radial.hpp"
#include "wmink/verify.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace wmink;
using namespace wmink::test;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Root of 2 s (4 s^2)^{-0.8} = 1 by plain bisection, independent of the solver.
double square_oracle() {
  auto f = [](double s) { return 2.0 * s * std::pow(4.0 * s * s, -0.8) - 1.0; };
  double lo = 0.1, hi = 2.0;  // f(lo) > 0 > f(hi)
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<SolvedInstance>& solved_pool() {
  static std::vector<SolvedInstance> pool;
  return pool;
}

Outcome square_oracle_check() {
  Outcome o;
  const double s_star = square_oracle();
  const Weight w = Weight::constant(1.0, 0.4);
  const MinkowskiTarget t(square_normals(), std::vector<double>(4, 1.0));
  const auto rep = solve_minkowski(t, w, {});
  double err = 0.0;
  for (Eigen::Index i = 0; i < rep.supports.size(); ++i) err = std::max(err, std::abs(rep.supports(i) / s_star - 1.0));
  o.require(rep.converged, "solver converged");
  o.require(err <= 1e-6, "support error");

  // Atoms at x = +-1 with mass 1/sqrt 2 lift to the same square, turned by 45 degrees.
  const DirectionalMeasure rho(1, {{vec({-1.0}), 1.0 / std::sqrt(2.0)}, {vec({1.0}), 1.0 / std::sqrt(2.0)}});
  auto inst = solve_instance(rho, w, {});
  double lifted_err = 0.0;
  for (Eigen::Index i = 0; i < inst.report.supports.size(); ++i)
    lifted_err = std::max(lifted_err, std::abs(inst.report.supports(i) / s_star - 1.0));
  const auto ver = verify_instance(rho, inst);
  o.require(lifted_err <= 1e-6, "lifted support error");
  o.require(ver.max_relative_error <= 1e-6 && ver.passed, "verification");
  o.detail << "s* = " << s_star << ", support rel. err " << err << " (direct), " << lifted_err
           << " (lifted), verification max rel. err " << ver.max_relative_error;
  solved_pool().push_back(std::move(inst));
  return o;
}

Outcome gaussian_two_roots() {
  Outcome o;
  const double a = 0.05;
  const auto roots = radial::gauss_roots(a, 1);
  o.require(roots.status == radial::RootStatus::two_roots, "two roots");
  double worst_eq = 0.0, worst_res = 0.0;
  bool noted = true, same_c = true;
  for (double r : {roots.r1, roots.r2}) {
    worst_eq = std::max(worst_eq, std::abs(std::exp(-r * r / 2) * r / (2 * std::numbers::pi) - a));
    const auto rep = radial::residual(r, 1, 3.0, 200);
    worst_res = std::max(worst_res, rep.max_relative_residual);
    same_c = same_c && std::abs(rep.c_u * a - 1.0) <= 1e-14;
    noted = noted && rep.rhs_note.find("differs") != std::string::npos && rep.alt_rhs_max_relative_gap > 0.1;
    o.require(rep.max_gradient_fd_error <= 1e-5 && rep.max_hessian_det_fd_error <= 1e-5, "finite differences");
  }
  o.require(roots.r1 < roots.r2, "distinct roots");
  o.require(worst_eq <= 1e-12, "root equation");
  o.require(worst_res <= 1e-6, "radial residual");
  o.require(same_c, "c_u = 1/a");
  o.require(noted, "right-hand side discrepancy recorded");
  o.detail << "r1 = " << roots.r1 << ", r2 = " << roots.r2 << ", equation err " << worst_eq
           << ", max residual " << worst_res << ", f = (1+|x|^2)^(-3/2) recorded against a/sqrt(1+|x|^2)";
  return o;
}

Outcome gradient_identity() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const double eps = 1e-5;
  double worst = 0.0;
  int points = 0;
  for (int n : {1, 2}) {
    const int d = n + 1;
    const auto normals = random_even_normals(d, n == 1 ? 5 : 7, rng);
    std::vector<double> masses(normals.size(), 1.0);
    const MinkowskiTarget t(normals, masses);
    for (const Weight& w : {Weight::constant(1.0, 0.4), Weight::gaussian(n, 0.5 / d)}) {
      std::uniform_real_distribution<double> u(0.7, 1.5);
      for (int trial = 0; trial < 20; ++trial, ++points) {
        Vec pair(static_cast<Eigen::Index>(t.pairs().size()));
        for (Eigen::Index i = 0; i < pair.size(); ++i) pair(i) = u(rng);
        const Vec h = t.expand(pair);
        const auto e = energy_and_gradient(h, t, w, {});
        for (Eigen::Index i = 0; i < h.size(); ++i) {
          Vec hp = h, hm = h;
          hp(i) += eps;
          hm(i) -= eps;
          const double fd = (energy_and_gradient(hp, t, w, {}).mu - energy_and_gradient(hm, t, w, {}).mu) / (2 * eps);
          const double f = e.facet_weights(i);
          const double rel = f > 0.0 ? std::abs(fd - f) / f : std::abs(fd);
          worst = std::max(worst, rel);
        }
      }
    }
  }
  o.require(worst <= 1e-5, "relative FD error");
  o.detail << points << " support vectors, max relative error " << worst;
  return o;
}

Outcome end_to_end() {
  Outcome o;
  std::mt19937_64 rng(77);
  double worst = 0.0, gap = 0.0;
  int converged = 0, total = 0;
  for (int n : {1, 2}) {
    for (int k = 0; k < 5; ++k, ++total) {
      const DirectionalMeasure rho(n, random_atoms(n, 5 + k, rng));
      SolverOptions opts;
      opts.tol = 1e-8;
      auto inst = solve_instance(rho, Weight::gaussian(n, 1.0 / (2 * (n + 1))), {}, opts);
      const auto ver = verify_instance(rho, inst, 1e-5, 1e-7);
      converged += inst.report.converged ? 1 : 0;
      worst = std::max(worst, ver.max_relative_error);
      gap = std::max(gap, ver.max_route_gap);
      solved_pool().push_back(std::move(inst));
    }
  }
  o.require(converged == total, "all converged");
  o.require(worst <= 1e-5, "per-atom error");
  o.require(gap <= 1e-7, "route agreement");
  o.detail << converged << "/" << total << " converged, max atom rel. err " << worst << ", max route gap " << gap;
  return o;
}

Outcome legendre_identities() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double bi = 0.0;
  for (int n : {1, 2}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<AffinePiece> pieces;
      for (int k = 0; k < 10; ++k) {
        Vec s(n);
        for (int i = 0; i < n; ++i) s(i) = u(rng);
        pieces.push_back({s, u(rng)});
      }
      const PWLConvexFunction f(n, pieces);
      const PWLConvexFunction fss = legendre_transform(legendre_transform(f));
      for (int i = 0; i < 200; ++i) {
        Vec x(n);
        for (int j = 0; j < n; ++j) x(j) = 2.5 * u(rng);
        bi = std::max(bi, std::abs(fss(x) - f(x)));
      }
    }
  }
  double uw = 0.0;
  for (const auto& inst : solved_pool()) {
    const PWLConvexFunction us = legendre_transform(inst.u);
    const auto& dom = inst.w.domain()->vertices();
    std::uniform_real_distribution<double> t(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      Vec x = Vec::Zero(inst.u.dim());
      double total = 0.0;
      for (const auto& v : dom) {
        const double c = t(rng);
        x += c * v;
        total += c;
      }
      x /= total;
      uw = std::max(uw, std::abs(us(x) - inst.w(x)));
    }
    for (const auto& v : dom) uw = std::max(uw, std::abs(us(v) - inst.w(v)));
  }
  o.require(bi <= 1e-10, "biconjugate");
  o.require(uw <= 1e-8, "u* = w");
  o.detail << "max |f** - f| " << bi << ", max |u* - w| on dom(w) " << uw << " over " << solved_pool().size()
           << " solved instances";
  return o;
}

Outcome admissibility() {
  Outcome o;
  const auto grid = log_grid(1e-3, 1e3);
  const auto g = admissibility_scan(Weight::gaussian(1, 0.25), 1, grid);
  const auto c = admissibility_scan(Weight::constant(1.0, 0.4), 1, grid);
  const auto bad = admissibility_scan(Weight::constant(1.0, 2.0), 1, grid);
  double closed = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid[i];
    closed = std::max(closed, std::abs(c.rows[i].ratio / (std::pow(std::numbers::pi, 0.2) * std::pow(r, -0.6)) - 1.0));
    closed = std::max(closed, std::abs(bad.rows[i].ratio / (std::numbers::pi * r) - 1.0));
  }
  o.require(g.pass(), "gaussian beta 0.25 passes");
  o.require(c.pass(), "constant beta 0.4 passes");
  o.require(!bad.pass(), "constant beta 2 fails");
  o.require(closed <= 1e-12, "closed-form disk ratios");
  o.detail << "gaussian/0.25 " << (g.pass() ? "PASS" : "FAIL") << ", constant/0.4 " << (c.pass() ? "PASS" : "FAIL")
           << ", constant/2 " << (bad.pass() ? "PASS" : "FAIL") << ", max deviation from disk closed forms " << closed;
  return o;
}

Outcome symmetry() {
  Outcome o;
  std::mt19937_64 rng(99);
  double antipodal = 0.0, equi = 0.0;
  for (int n : {1, 2}) {
    const int d = n + 1;
    for (int trial = 0; trial < 3; ++trial) {
      const auto normals = random_even_normals(d, n == 1 ? 4 : 6, rng);
      std::vector<double> masses;
      for (std::size_t i = 0; i < normals.size(); i += 2) masses.insert(masses.end(), 2, 0.2 + 0.07 * i);
      const Weight w = Weight::gaussian(n, 0.5 / d);
      const auto base = solve_minkowski(MinkowskiTarget(normals, masses), w, {});
      o.require(base.converged, "converged");
      const auto& verts = base.body->vertices();
      for (const auto& p : verts) {
        double best = 1e300;
        for (const auto& q : verts) best = std::min(best, (p + q).norm());
        antipodal = std::max(antipodal, best);
      }
      const Eigen::MatrixXd rot = rotation(d, 0.3 + trial, -0.8, 0.5 * trial);
      std::vector<Direction> turned;
      for (const auto& xi : normals) turned.emplace_back(rot * xi.coords());
      const auto moved = solve_minkowski(MinkowskiTarget(turned, masses), w, {});
      o.require(moved.converged, "converged");
      equi = std::max(equi, (base.h - moved.h).lpNorm<Eigen::Infinity>());
      for (const auto& p : verts) {
        double best = 1e300;
        for (const auto& q : moved.body->vertices()) best = std::min(best, (rot * p - q).norm());
        equi = std::max(equi, best);
      }
    }
  }
  o.require(antipodal <= 1e-10, "antipodal vertices");
  o.require(equi <= 1e-8, "equivariance");
  o.detail << "max antipodal defect " << antipodal << ", max equivariance defect " << equi;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"square oracle (Lebesgue weight, beta 0.4)", square_oracle_check},
      {"gaussian sphere example, two radial solutions", gaussian_two_roots},
      {"gradient identity d mu / dh = weighted facet area", gradient_identity},
      {"end-to-end weak solutions on random instances", end_to_end},
      {"Legendre involution and u = w*", legendre_identities},
      {"admissibility scan", admissibility},
      {"symmetry and equivariance", symmetry},
  };
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu criteria, %d failed, %.1f s\n", criteria.size(), failed, secs);
  return failed == 0 ? 0 : 1;
}
