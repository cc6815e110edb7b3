#include "wmink/radial.hpp"

#include "wmink/measure.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace wmink::radial {

namespace {
constexpr double kTwoPi = boost::math::constants::two_pi<double>();
}

double sphere_density(double r, int n) {
  return std::exp(-0.5 * r * r) * std::pow(r, n) / std::pow(kTwoPi, 0.5 * (n + 1));
}

std::string to_string(RootStatus s) {
  switch (s) {
    case RootStatus::two_roots:
      return "two_roots";
    case RootStatus::double_root:
      return "double_root";
    case RootStatus::no_root:
      return "no_root";
  }
  return "unknown";
}

namespace {

// Root of g(r) = a on [lo, hi] where g - a changes sign; bisects until the bracket stops shrinking.
double bisect(double lo, double hi, double a, int n) {
  const bool rising = sphere_density(lo, n) < a;
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((sphere_density(mid, n) < a) == rising)
      lo = mid;
    else
      hi = mid;
  }
  return std::abs(sphere_density(lo, n) - a) <= std::abs(sphere_density(hi, n) - a) ? lo : hi;
}

}  // namespace

Roots gauss_roots(double a, int n) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("gauss_roots: a must be positive");
  if (n < 1) throw std::invalid_argument("gauss_roots: n must be >= 1");
  Roots out;
  out.peak_radius = std::sqrt(static_cast<double>(n));
  out.peak_value = sphere_density(out.peak_radius, n);
  if (std::abs(a - out.peak_value) <= 1e-12) {
    out.status = RootStatus::double_root;
    out.r1 = out.r2 = out.peak_radius;
    return out;
  }
  if (a > out.peak_value) return out;
  out.status = RootStatus::two_roots;
  out.r1 = bisect(0.0, out.peak_radius, a, n);
  double hi = 2.0 * out.peak_radius;
  while (sphere_density(hi, n) >= a) hi *= 2.0;
  out.r2 = bisect(out.peak_radius, hi, a, n);
  return out;
}

namespace {

using Point = std::vector<double>;

double norm(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// u*(y) by maximizing t |y| - u(t y/|y|) over t >= 0 (the maximizer lies on the ray through y).
double conjugate_by_sup(double r, double y_norm) {
  const auto neg = [&](double t) { return -(t * y_norm - r * std::sqrt(1.0 + t * t)); };
  const auto [t, val] = boost::math::tools::brent_find_minima(neg, 0.0, 1e4, 52);
  (void)t;
  return -val;
}

}  // namespace

ResidualReport residual(double r, int n, double max_norm, int points) {
  if (!(r > 0.0)) throw std::invalid_argument("radial residual: r must be positive");
  if (n != 1 && n != 2) throw std::invalid_argument("radial residual: n must be 1 or 2");
  if (points < 2) throw std::invalid_argument("radial residual: need at least two grid points");

  ResidualReport rep;
  rep.r = r;
  rep.n = n;
  rep.a = sphere_density(r, n);
  rep.c_u = 1.0 / rep.a;
  const Weight phi = Weight::gaussian(n, Weight::default_beta(WeightKind::gaussian, n));
  const double phi_level = std::exp(-0.5 * r * r) / std::pow(kTwoPi, 0.5 * (n + 1));

  const auto u = [&](const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return r * std::sqrt(1.0 + s);
  };
  constexpr double kStep = 1e-4;
  constexpr double kGolden = 2.399963229728653;  // golden angle

  for (int k = 0; k < points; ++k) {
    const double t = max_norm * k / (points - 1);
    Point x(n);
    if (n == 1) {
      x[0] = (k % 2 == 0) ? t : -t;
    } else {
      x[0] = t * std::cos(k * kGolden);
      x[1] = t * std::sin(k * kGolden);
    }
    const double q = 1.0 + t * t;

    Point du(n);
    for (int i = 0; i < n; ++i) du[i] = r * x[i] / std::sqrt(q);
    const double du_norm = norm(du);
    const double conj = -std::sqrt(std::max(r * r - du_norm * du_norm, 0.0));
    const double det = std::pow(r, n) * std::pow(q, -0.5 * (n + 2));

    // central differences
    for (int i = 0; i < n; ++i) {
      Point xp = x, xm = x;
      xp[i] += kStep;
      xm[i] -= kStep;
      const double fd = (u(xp) - u(xm)) / (2.0 * kStep);
      rep.max_gradient_fd_error = std::max(rep.max_gradient_fd_error, std::abs(fd - du[i]) / std::max(1.0, std::abs(du[i])));
    }
    double fd_det;
    if (n == 1) {
      Point xp = x, xm = x;
      xp[0] += kStep;
      xm[0] -= kStep;
      fd_det = (u(xp) - 2.0 * u(x) + u(xm)) / (kStep * kStep);
    } else {
      double hess[2][2];
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          auto shifted = [&](double si, double sj) {
            Point z = x;
            z[i] += si;
            z[j] += sj;
            return u(z);
          };
          hess[i][j] = (shifted(kStep, kStep) - shifted(kStep, -kStep) - shifted(-kStep, kStep) +
                        shifted(-kStep, -kStep)) /
                       (4.0 * kStep * kStep);
        }
      }
      fd_det = hess[0][0] * hess[1][1] - hess[0][1] * hess[1][0];
    }
    rep.max_hessian_det_fd_error =
        std::max(rep.max_hessian_det_fd_error, std::abs(fd_det - det) / std::max(1.0, std::abs(det)));

    rep.max_conjugate_error = std::max(rep.max_conjugate_error, std::abs(conjugate_by_sup(r, du_norm) - conj));

    Vec z(n + 1);
    for (int i = 0; i < n; ++i) z(i) = du[i];
    z(n) = conj;
    const double phi_val = phi(z);
    rep.max_phi_deviation = std::max(rep.max_phi_deviation, std::abs(phi_val - phi_level) / phi_level);

    Sample s;
    s.x_norm = t;
    s.lhs = rep.c_u * phi_val * det;
    s.rhs = std::pow(q, -0.5 * (n + 2));
    s.relative_residual = std::abs(s.lhs - s.rhs) / s.rhs;
    s.alt_rhs = rep.a / std::sqrt(q);
    rep.max_relative_residual = std::max(rep.max_relative_residual, s.relative_residual);
    rep.alt_rhs_max_relative_gap = std::max(rep.alt_rhs_max_relative_gap, std::abs(s.lhs - s.alt_rhs) / s.alt_rhs);
    rep.samples.push_back(s);
  }

  // conjugate on a grid of |y| up to r - 1e-3, away from the gradient-image boundary
  for (int k = 0; k < points; ++k) {
    const double yn = (r - 1e-3) * k / (points - 1);
    const double exact = -std::sqrt(r * r - yn * yn);
    rep.max_conjugate_error = std::max(rep.max_conjugate_error, std::abs(conjugate_by_sup(r, yn) - exact));
  }

  std::ostringstream note;
  note << "with u = r sqrt(1+|x|^2), Gaussian phi and c_u = 1/a the equation yields f(x) = (1+|x|^2)^(-"
       << (n + 2) << "/2); the form a/sqrt(1+|x|^2) differs (max relative gap " << rep.alt_rhs_max_relative_gap
       << ") and matches the exponent only for n = -1";
  rep.rhs_note = note.str();
  return rep;
}

}  // namespace wmink::radial
