#include "support.hpp"
#include "wmink/errors.hpp"
#include "wmink/minkowski.hpp"

#include <doctest.h>

using namespace wmink;
using namespace wmink::test;

namespace {

// 2 s (4 s^2)^{-0.8} = 1 has the exact root s = 1/2 (bisection in mpmath agrees).
constexpr double kSquareRoot = 0.5;

MinkowskiTarget square_target(double a = 1.0) { return MinkowskiTarget(square_normals(), std::vector<double>(4, a)); }

Vec random_even_h(const MinkowskiTarget& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.6, 1.6);
  Vec pair(static_cast<Eigen::Index>(t.pairs().size()));
  for (Eigen::Index i = 0; i < pair.size(); ++i) pair(i) = u(rng);
  return t.expand(pair);
}

}  // namespace

TEST_SUITE("minkowski") {
  TEST_CASE("target validation") {
    CHECK_NOTHROW(square_target());
    CHECK(square_target().pairs().size() == 2);
    CHECK_THROWS_AS(MinkowskiTarget(square_normals(), {1, 2, 1, 1}), InvalidTarget);
    CHECK_THROWS_AS(MinkowskiTarget({dir({1, 0}), dir({0, 1}), dir({-1, 0})}, {1, 1, 1}), InvalidTarget);
    CHECK_THROWS_AS(MinkowskiTarget({dir({1, 0}), dir({-1, 0})}, {1, 1}), ConcentratedOnHyperplane);
    CHECK_THROWS_AS(MinkowskiTarget(square_normals(), {1, 1, 0, 0}), InvalidTarget);
  }

  TEST_CASE("closed-form gradient on the square") {
    const Weight w = Weight::constant(1.0, 0.4);
    for (double s : {0.3, 0.5, 1.0, 2.0}) {
      const auto e = energy_and_gradient(Vec::Constant(4, s), square_target(), w, {});
      const double expected = std::pow(4.0 * s * s, 0.2 - 1.0) * 2.0 * s - 1.0;
      for (Eigen::Index i = 0; i < 4; ++i) CHECK(e.gradient(i) == doctest::Approx(expected).epsilon(1e-13));
      CHECK(e.mu == doctest::Approx(4.0 * s * s));
    }
    const auto at_root = energy_and_gradient(Vec::Constant(4, kSquareRoot), square_target(), w, {});
    CHECK(at_root.gradient.lpNorm<Eigen::Infinity>() <= 1e-14);
  }

  TEST_CASE("gradient matches central differences") {
    std::mt19937_64 rng(17);
    const double eps = 1e-5;
    for (int d : {2, 3}) {
      const auto normals = random_even_normals(d, d == 2 ? 4 : 6, rng);
      std::vector<double> masses;
      for (std::size_t i = 0; i < normals.size(); i += 2) masses.insert(masses.end(), 2, 0.5 + 0.1 * i);
      const MinkowskiTarget t(normals, masses);
      for (const Weight& w : {Weight::constant(1.0, 0.4), Weight::gaussian(d - 1, 0.5 / d)}) {
        for (int trial = 0; trial < 5; ++trial) {
          const Vec h = random_even_h(t, rng);
          const auto e = energy_and_gradient(h, t, w, {});
          for (Eigen::Index i = 0; i < h.size(); ++i) {
            Vec hp = h, hm = h;
            hp(i) += eps;
            hm(i) -= eps;
            const double fd =
                (energy_and_gradient(hp, t, w, {}).energy - energy_and_gradient(hm, t, w, {}).energy) / (2 * eps);
            CHECK(std::abs(fd - e.gradient(i)) <= 1e-5 * std::max(1.0, std::abs(e.gradient(i))));
          }
        }
      }
    }
  }

  TEST_CASE("square solve reaches the closed-form support") {
    const auto rep = solve_minkowski(square_target(), Weight::constant(1.0, 0.4), {});
    REQUIRE(rep.converged);
    for (Eigen::Index i = 0; i < rep.supports.size(); ++i)
      CHECK(std::abs(rep.supports(i) - kSquareRoot) / kSquareRoot <= 1e-6);
    CHECK(rep.max_relative_residual <= 1e-8);
    const auto res = residual_report(rep.supports, square_target(), Weight::constant(1.0, 0.4), {});
    CHECK(res.max_abs <= 1e-8);
    // energy is nondecreasing along accepted steps
    for (std::size_t i = 1; i < rep.energy_trace.size(); ++i)
      CHECK(rep.energy_trace[i] >= rep.energy_trace[i - 1] - 1e-14 * (1.0 + std::abs(rep.energy_trace[i - 1])));
  }

  TEST_CASE("residuals at h = 1 are equal and even") {
    const auto res = residual_report(Vec::Constant(4, 1.0), square_target(), Weight::constant(1.0, 0.4), {});
    CHECK(res.max_abs > 0.1);
    for (Eigen::Index i = 1; i < 4; ++i) CHECK(res.residuals(i) == doctest::Approx(res.residuals(0)).epsilon(1e-14));

    std::mt19937_64 rng(2);
    const auto normals = random_even_normals(3, 6, rng);
    const MinkowskiTarget t(normals, std::vector<double>(normals.size(), 1.0));
    const auto r = residual_report(random_even_h(t, rng), t, Weight::gaussian(2, 0.1), {});
    for (const auto& [i, j] : t.pairs()) CHECK(r.residuals(i) == r.residuals(j));
  }

  TEST_CASE("dihedral symmetry gives a regular polygon") {
    for (int m : {4, 5}) {
      const auto normals = equiangular_normals(m, 0.1);
      const MinkowskiTarget t(normals, std::vector<double>(normals.size(), 0.3));
      const auto rep = solve_minkowski(t, Weight::gaussian(1, 0.25), {});
      REQUIRE(rep.converged);
      CHECK(rep.h.maxCoeff() - rep.h.minCoeff() <= 1e-8);
    }
  }

  TEST_CASE("doubling the masses changes the solution") {
    const auto normals = equiangular_normals(4);
    const Weight w = Weight::gaussian(1, 0.25);
    const auto one = solve_minkowski(MinkowskiTarget(normals, std::vector<double>(8, 0.3)), w, {});
    const auto two = solve_minkowski(MinkowskiTarget(normals, std::vector<double>(8, 0.6)), w, {});
    REQUIRE(one.converged);
    REQUIRE(two.converged);
    CHECK((one.h - two.h).lpNorm<Eigen::Infinity>() > 1e-4);
  }

  TEST_CASE("rotating the target leaves the supports unchanged") {
    std::mt19937_64 rng(31);
    for (int d : {2, 3}) {
      const auto normals = random_even_normals(d, d == 2 ? 4 : 5, rng);
      std::vector<double> masses;
      for (std::size_t i = 0; i < normals.size(); i += 2) masses.insert(masses.end(), 2, 0.2 + 0.05 * i);
      const Weight w = Weight::gaussian(d - 1, 0.5 / d);
      const auto base = solve_minkowski(MinkowskiTarget(normals, masses), w, {});
      const Eigen::MatrixXd rot = rotation(d, 0.7, -0.4, 1.1);
      std::vector<Direction> turned;
      for (const auto& xi : normals) turned.emplace_back(rot * xi.coords());
      const auto moved = solve_minkowski(MinkowskiTarget(turned, masses), w, {});
      REQUIRE(base.converged);
      REQUIRE(moved.converged);
      CHECK((base.h - moved.h).lpNorm<Eigen::Infinity>() <= 1e-8);
    }
  }

  TEST_CASE("solver failure modes") {
    SolverOptions few;
    few.max_iters = 2;
    const auto rep = solve_minkowski(square_target(), Weight::constant(1.0, 0.4), {}, few);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 2);

    CHECK_THROWS_AS(solve_minkowski(square_target(), Weight::constant(1.0, 2.0), {}), InadmissibleWeight);

    SolverOptions floor;
    floor.min_support = 0.9;  // the solution sits at 0.5
    CHECK_THROWS_AS(solve_minkowski(square_target(), Weight::constant(1.0, 0.4), {}, floor), CollapsedBody);
  }
}
