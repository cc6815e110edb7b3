#pragma once

#include "wmink/geometry.hpp"
#include "wmink/quadrature.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wmink {

enum class WeightKind { constant, gaussian, radial_profile };

std::string to_string(WeightKind kind);

/**
 * Even, non-negative density phi on R^{n+1} together with the exponent beta
 * of the growth conditions. All kinds are radial or constant.
 */
class Weight {
 public:
  /// phi = value > 0.
  static Weight constant(double value, double beta);
  /// Standard Gaussian on R^{n+1}; requires 0 < beta < 1/(n+1).
  static Weight gaussian(int n, double beta);
  /// phi(z) = g(|z|), g piecewise linear through (r_k, g_k), constant past the last knot.
  static Weight radial_profile(std::vector<std::pair<double, double>> profile, double beta);

  /// Default exponent for a kind: 0.4 for constant, 1/(2(n+1)) otherwise.
  static double default_beta(WeightKind kind, int n);

  WeightKind kind() const { return kind_; }
  double beta() const { return beta_; }
  double value() const { return value_; }
  const std::vector<std::pair<double, double>>& profile() const { return profile_; }

  /// phi(z); bit-identical on z and -z.
  double operator()(const Vec& z) const;
  /// phi as a function of |z| in ambient dimension `ambient_dim`.
  double radial(double r, int ambient_dim) const;

 private:
  Weight(WeightKind kind, double beta) : kind_(kind), beta_(beta) {}

  WeightKind kind_;
  double beta_;
  double value_ = 1.0;
  std::vector<std::pair<double, double>> profile_;
};

double eval_weight(const Weight& w, const Vec& z);

/// Integral of phi over the facet against H^n; 0 for inactive facets.
double weighted_facet_area(const Facet& facet, const Weight& w, const QuadratureSpec& q);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Independent Monte Carlo estimate of weighted_facet_area (uniform samples on the facet).
MonteCarloEstimate weighted_facet_area_mc(const Facet& facet, const Weight& w, const QuadratureSpec& q);

/// mu(K): fan of simplices from the origin over the active facets.
double mu_volume(const Polytope& body, const Weight& w, const QuadratureSpec& q);

inline constexpr double kMassFloor = 1e-14;

/// mu(K)^(beta/(n+1) - 1) from a precomputed mass. Throws ZeroMass below the floor.
double c_constant_from_mass(double mass, double beta, int n);
double c_constant(const Polytope& body, const Weight& w, const QuadratureSpec& q);

/// mu(r B) for the centered ball in R^{n+1}, by radial quadrature.
double ball_mass(const Weight& w, int n, double r);

struct AdmissibilityRow {
  double r;
  double mass;
  double ratio;  // mu(rB)^(beta/(n+1)) / r
};

struct AdmissibilityScan {
  std::vector<AdmissibilityRow> rows;
  double slope_at_zero = 0.0;      // log-log slope over the lowest decade
  double slope_at_infinity = 0.0;  // log-log slope over the highest decade
  bool blows_up_at_zero = false;   // ratio -> +inf as r -> 0+
  bool decays_at_infinity = false;  // ratio -> 0 as r -> inf
  bool pass() const { return blows_up_at_zero && decays_at_infinity; }
};

/// Log-spaced grid with `per_decade` points per decade, endpoints included.
std::vector<double> log_grid(double lo, double hi, int per_decade = 10);

/**
 * Numerical diagnostic for the growth conditions on mu: the ratio must trend
 * to 0 at infinity and to +inf at zero. A trend passes when the ratio is
 * monotone over the end decade with log-log slope at most -0.05.
 * The grid must span at least four decades.
 */
AdmissibilityScan admissibility_scan(const Weight& w, int n, const std::vector<double>& r_grid);

}  // namespace wmink
