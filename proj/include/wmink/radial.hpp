#pragma once

#include <string>
#include <vector>

/// The radial Gaussian example: spheres as solutions and u(x) = r sqrt(1 + |x|^2).
namespace wmink::radial {

/// Gaussian surface-area density of the sphere of radius r in R^{n+1}: e^{-r^2/2} r^n / (2 pi)^{(n+1)/2}.
double sphere_density(double r, int n);

enum class RootStatus { two_roots, double_root, no_root };

std::string to_string(RootStatus s);

struct Roots {
  RootStatus status = RootStatus::no_root;
  double r1 = 0.0;  // on (0, sqrt n]
  double r2 = 0.0;  // on [sqrt n, inf)
  double peak_radius = 0.0;
  double peak_value = 0.0;
};

/**
 * Radii with sphere_density(r, n) = a. The density peaks at sqrt(n); both
 * branches are bisected to full precision. |a - peak| <= 1e-12 counts as a
 * double root.
 */
Roots gauss_roots(double a, int n);

struct Sample {
  double x_norm;
  double lhs;              // c_u phi(Du, u*(Du)) det D^2 u
  double rhs;              // (1 + |x|^2)^{-(n+2)/2}
  double relative_residual;
  double alt_rhs;          // a / sqrt(1 + |x|^2)
};

struct ResidualReport {
  double r = 0.0;
  int n = 0;
  double a = 0.0;
  double c_u = 0.0;
  double max_relative_residual = 0.0;
  double max_gradient_fd_error = 0.0;     // analytic Du vs central differences
  double max_hessian_det_fd_error = 0.0;  // analytic det D^2u vs central differences
  double max_conjugate_error = 0.0;       // analytic u* vs sup-scan evaluation
  double max_phi_deviation = 0.0;         // phi(Du, u*(Du)) vs e^{-r^2/2}/(2 pi)^{(n+1)/2}
  double alt_rhs_max_relative_gap = 0.0;  // self-consistent rhs vs a / sqrt(1 + |x|^2)
  std::string rhs_note;
  std::vector<Sample> samples;
};

/**
 * Pointwise residual of c_u phi(Du, u*(Du)) det D^2 u = f for u = r sqrt(1 + |x|^2),
 * Gaussian phi and c_u = 1/a, against the right-hand side that the equation
 * actually produces, f(x) = (1 + |x|^2)^{-(n+2)/2}. The form a / sqrt(1 + |x|^2)
 * is also evaluated and its mismatch reported. `points` grid radii cover
 * [0, max_norm]; for n = 2 the directions rotate along the grid.
 */
ResidualReport residual(double r, int n, double max_norm = 3.0, int points = 200);

}  // namespace wmink::radial
