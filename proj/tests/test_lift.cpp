#include "support.hpp"
#include "wmink/errors.hpp"
#include "wmink/minkowski.hpp"

#include <doctest.h>

using namespace wmink;
using namespace wmink::test;

TEST_SUITE("lift") {
  TEST_CASE("lift_point") {
    CHECK((lift_point(vec({0, 0})).coords() - vec({0, 0, -1})).norm() == 0.0);
    CHECK((lift_point(vec({1})).coords() - vec({1, -1}) / std::sqrt(2.0)).norm() <= 1e-15);
    const Vec x = vec({0.3, -2.0});
    CHECK((unlift(lift_point(x)) - x).norm() <= 1e-14);
    CHECK(lift_point(vec({5.0, 5.0}))[2] < 0.0);
  }

  TEST_CASE("collinear atoms lift onto a great circle") {
    const Vec a = vec({0.2, 1.0}), b = vec({1.0, -0.5});
    Eigen::Matrix3d m;
    m.col(0) = lift_point(a).coords();
    m.col(1) = lift_point(b).coords();
    m.col(2) = lift_point(a + 2.7 * (b - a)).coords();
    CHECK(std::abs(m.determinant()) <= 1e-12);
  }

  TEST_CASE("directional measure ingestion") {
    const DirectionalMeasure rho(1, {{vec({1.0}), 1.0}, {vec({1.0 + 1e-12}), 2.0}, {vec({-2.0}), 0.5}});
    REQUIRE(rho.atoms().size() == 2);
    CHECK(rho.atoms()[0].mass == 3.0);
    CHECK(rho.total_mass() == 3.5);
    CHECK(rho.first_moment() == doctest::Approx(3.0 + 1.0));
    CHECK_THROWS_AS(DirectionalMeasure(1, {{vec({0.0}), -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(DirectionalMeasure(2, {{vec({0.0}), 1.0}}), std::invalid_argument);
    CHECK(DirectionalMeasure(2, {{vec({0, 0}), 1}, {vec({1, 1}), 1}, {vec({2, 2}), 1}}).concentrated_on_hyperplane());
    CHECK_FALSE(DirectionalMeasure(2, {{vec({0, 0}), 1}, {vec({1, 1}), 1}, {vec({2, 0}), 1}}).concentrated_on_hyperplane());
  }

  TEST_CASE("rho prime reweighting") {
    const DirectionalMeasure rho(1, {{vec({0.0}), 2.0}, {vec({1.0}), 1.0}});
    const DirectionalMeasure rp = build_rho_prime(rho);
    CHECK(rp.atoms()[0].mass == 2.0);
    CHECK(rp.atoms()[1].mass == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(rp.atoms()[1].x == rho.atoms()[1].x);
    CHECK(rp.total_mass() >= rho.total_mass());
    const DirectionalMeasure origin(2, {{vec({0, 0}), 1.5}});
    CHECK(build_rho_prime(origin).total_mass() == origin.total_mass());
  }

  TEST_CASE("symmetrized lift") {
    CHECK_THROWS_AS(symmetrized_lift(DirectionalMeasure(1, {{vec({0.0}), 1.0}})), ConcentratedOnHyperplane);
    try {
      symmetrized_lift(DirectionalMeasure(2, {{vec({0, 0}), 1}, {vec({1, 0}), 1}}));
      FAIL("expected ConcentratedOnHyperplane");
    } catch (const ConcentratedOnHyperplane& e) {
      CHECK(std::string(e.what()).find("hyperplane") != std::string::npos);
    }

    const DirectionalMeasure rho(1, {{vec({-1.0}), 1.0}, {vec({0.0}), 1.0}, {vec({1.0}), 1.0}});
    const MinkowskiTarget t = symmetrized_lift(rho);
    REQUIRE(t.size() == 6);
    const double r2 = std::sqrt(2.0);
    const std::vector<double> masses{r2, r2, 1, 1, r2, r2};
    for (std::size_t i = 0; i < 6; ++i) CHECK(t.masses()[i] == doctest::Approx(masses[i]).epsilon(1e-15));
    CHECK((t.normals()[0].coords() - vec({-1, -1}) / r2).norm() <= 1e-15);
    CHECK((t.normals()[1].coords() - vec({1, 1}) / r2).norm() <= 1e-15);
    CHECK((t.normals()[2].coords() - vec({0, -1})).norm() == 0.0);
    CHECK((t.normals()[3].coords() - vec({0, 1})).norm() == 0.0);
  }

  TEST_CASE("lifted targets are balanced and keep the mass bookkeeping") {
    std::mt19937_64 rng(13);
    for (int n : {1, 2}) {
      for (int trial = 0; trial < 10; ++trial) {
        const DirectionalMeasure rho(n, random_atoms(n, 3 + trial % 4, rng));
        const MinkowskiTarget t = symmetrized_lift(rho);
        Vec moment = Vec::Zero(n + 1);
        double total = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) {
          moment += t.masses()[i] * t.normals()[i].coords();
          total += t.masses()[i];
        }
        CHECK(moment.norm() == 0.0);
        double expected = 0.0;
        for (const auto& a : rho.atoms()) expected += a.mass * std::sqrt(1.0 + a.x.squaredNorm());
        CHECK(total == doctest::Approx(2.0 * expected).epsilon(1e-15));
        for (std::size_t j = 0; j < rho.atoms().size(); ++j) {
          CHECK(t.normals()[2 * j][n] < 0.0);
          CHECK(t.normals()[2 * j + 1][n] > 0.0);
        }
      }
    }
  }

  TEST_CASE("pushforward on random caps") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n : {1, 2}) {
      const DirectionalMeasure rho(n, random_atoms(n, 8, rng));
      const DirectionalMeasure rp = build_rho_prime(rho);
      const MinkowskiTarget t = symmetrized_lift(rho);
      for (int trial = 0; trial < 50; ++trial) {
        // cap around a lower-hemisphere center, small enough to stay in the lower hemisphere
        Vec center(n + 1);
        for (int i = 0; i < n; ++i) center(i) = 4.0 * u(rng) - 2.0;
        center(n) = -1.0;
        const Direction c(center);
        const double tilt = std::acos(-c[n]);
        const double radius = (std::numbers::pi / 2 - tilt) * u(rng);
        double cap_mass = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i)
          if (t.normals()[i].angle_to(c) <= radius) cap_mass += t.masses()[i];
        double preimage_mass = 0.0;
        for (const auto& a : rp.atoms())
          if (lift_point(a.x).angle_to(c) <= radius) preimage_mass += a.mass;
        CHECK(cap_mass == preimage_mass);
      }
    }
  }
}
