#include "wmink/measure.hpp"

#include "wmink/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wmink {

namespace {

constexpr double kTwoPi = boost::math::constants::two_pi<double>();

// Picks z or -z so that the first nonzero coordinate is positive.
Vec canonical(const Vec& z) {
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (z(i) > 0.0) return z;
    if (z(i) < 0.0) return -z;
  }
  return z;
}

double interpolate(const std::vector<std::pair<double, double>>& prof, double r) {
  if (r >= prof.back().first) return prof.back().second;
  auto it = std::upper_bound(prof.begin(), prof.end(), r,
                             [](double x, const std::pair<double, double>& k) { return x < k.first; });
  const auto& [r1, g1] = *it;
  const auto& [r0, g0] = *(it - 1);
  const double t = (r - r0) / (r1 - r0);
  return g0 + t * (g1 - g0);
}

}  // namespace

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::constant:
      return "constant";
    case WeightKind::gaussian:
      return "gaussian";
    case WeightKind::radial_profile:
      return "radial_profile";
  }
  return "unknown";
}

Weight Weight::constant(double value, double beta) {
  if (!(value > 0.0) || !std::isfinite(value)) throw InvalidWeight("constant weight must be positive and finite");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidWeight("beta must be positive");
  Weight w(WeightKind::constant, beta);
  w.value_ = value;
  return w;
}

Weight Weight::gaussian(int n, double beta) {
  if (n < 1) throw InvalidWeight("gaussian weight: dimension n must be >= 1");
  const double upper = 1.0 / (n + 1);
  if (!(beta > 0.0 && beta < upper))
    throw InvalidWeight("gaussian weight requires 0 < beta < 1/(n+1) = " + std::to_string(upper));
  return Weight(WeightKind::gaussian, beta);
}

Weight Weight::radial_profile(std::vector<std::pair<double, double>> profile, double beta) {
  if (profile.empty()) throw InvalidWeight("radial profile needs at least one knot");
  if (profile.front().first != 0.0) throw InvalidWeight("radial profile must start at r = 0");
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto& [r, g] = profile[i];
    if (!std::isfinite(r) || !std::isfinite(g) || g < 0.0)
      throw InvalidWeight("radial profile values must be finite and non-negative");
    if (i > 0 && !(r > profile[i - 1].first)) throw InvalidWeight("radial profile radii must increase strictly");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidWeight("beta must be positive");
  Weight w(WeightKind::radial_profile, beta);
  w.profile_ = std::move(profile);
  return w;
}

double Weight::default_beta(WeightKind kind, int n) {
  return kind == WeightKind::constant ? 0.4 : 1.0 / (2.0 * (n + 1));
}

double Weight::radial(double r, int ambient_dim) const {
  switch (kind_) {
    case WeightKind::constant:
      return value_;
    case WeightKind::gaussian:
      return std::exp(-0.5 * r * r) / std::pow(kTwoPi, 0.5 * ambient_dim);
    case WeightKind::radial_profile:
      return interpolate(profile_, r);
  }
  return 0.0;
}

double Weight::operator()(const Vec& z) const {
  if (kind_ == WeightKind::constant) return value_;
  const Vec c = canonical(z);
  return radial(c.norm(), static_cast<int>(c.size()));
}

double eval_weight(const Weight& w, const Vec& z) { return w(z); }

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a(i) - b(i)) > 1e-9) return a(i) < b(i);
  }
  return false;
}

// Simplices (segments in R^2, triangles in R^3) covering an active facet. Facets whose normal
// is the negative member of an antipodal pair are reflected through the origin first, so a
// facet and its antipode get the same triangulation; phi is even, so the integrals agree.
std::vector<std::vector<Vec>> facet_simplices(const Facet& f) {
  std::vector<std::vector<Vec>> out;
  if (!f.active()) return out;
  std::vector<Vec> v = f.vertices;
  const Vec& xi = f.normal.coords();
  Eigen::Index lead = 0;
  while (std::abs(xi(lead)) <= 1e-12) ++lead;
  if (xi(lead) < 0.0) {
    for (auto& p : v) p = -p;
    std::reverse(v.begin(), v.end());
  }
  if (v.front().size() == 2) {
    if (lex_less(v.back(), v.front())) std::swap(v.front(), v.back());
    out.push_back({v.front(), v.back()});
  } else {
    std::rotate(v.begin(), std::min_element(v.begin(), v.end(), lex_less), v.end());
    for (std::size_t k = 1; k + 1 < v.size(); ++k) out.push_back({v[0], v[k], v[k + 1]});
  }
  return out;
}

}  // namespace

double weighted_facet_area(const Facet& facet, const Weight& w, const QuadratureSpec& q) {
  if (w.kind() == WeightKind::constant) return w.value() * facet.area;
  double total = 0.0;
  const auto phi = [&w](const Vec& y) { return w(y); };
  for (const auto& s : facet_simplices(facet)) total += integrate_simplex_refined(s, phi, q.order, kMaxSimplexEdge);
  return total;
}

MonteCarloEstimate weighted_facet_area_mc(const Facet& facet, const Weight& w, const QuadratureSpec& q) {
  const auto simplices = facet_simplices(facet);
  if (simplices.empty()) return {};
  std::vector<double> cumulative;
  double area = 0.0;
  for (const auto& s : simplices) cumulative.push_back(area += simplex_volume(s));

  std::mt19937_64 rng(q.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double sum = 0.0, sum_sq = 0.0;
  double u[2];
  for (int i = 0; i < q.mc_samples; ++i) {
    const double pick = unif(rng) * area;
    const std::size_t k = std::min<std::size_t>(
        std::lower_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin(), simplices.size() - 1);
    const int dim = static_cast<int>(simplices[k].size()) - 1;
    for (int j = 0; j < dim; ++j) u[j] = unif(rng);
    const double val = w(sample_simplex(simplices[k], std::span<const double>(u, dim)));
    sum += val;
    sum_sq += val * val;
  }
  const double n = q.mc_samples;
  const double mean = sum / n;
  const double var = std::max(sum_sq / n - mean * mean, 0.0);
  return {area * mean, area * std::sqrt(var / n)};
}

double mu_volume(const Polytope& body, const Weight& w, const QuadratureSpec& q) {
  const Vec origin = Vec::Zero(body.dimension());
  const auto phi = [&w](const Vec& y) { return w(y); };
  double total = 0.0;
  const bool flat = w.kind() == WeightKind::constant;
  for (const auto& f : body.facets()) {
    for (auto s : facet_simplices(f)) {
      s.insert(s.begin(), origin);
      total += flat ? simplex_volume(s) : integrate_simplex_refined(s, phi, q.order, kMaxSimplexEdge);
    }
  }
  return flat ? w.value() * total : total;
}

double c_constant_from_mass(double mass, double beta, int n) {
  if (!(mass > kMassFloor)) throw ZeroMass("mu(K) is below the quadrature floor");
  return std::pow(mass, beta / (n + 1) - 1.0);
}

double c_constant(const Polytope& body, const Weight& w, const QuadratureSpec& q) {
  return c_constant_from_mass(mu_volume(body, w, q), w.beta(), body.dimension() - 1);
}

double ball_mass(const Weight& w, int n, double r) {
  if (n != 1 && n != 2) throw std::invalid_argument("ball_mass: n must be 1 or 2");
  if (!(r > 0.0)) return 0.0;
  const int d = n + 1;
  const double sphere = n == 1 ? kTwoPi : 2.0 * kTwoPi;
  const auto integrand = [&](double s) { return w.radial(s, d) * std::pow(s, n); };

  std::vector<double> cuts{0.0};
  if (w.kind() == WeightKind::radial_profile) {
    for (const auto& [knot, g] : w.profile())
      if (knot > 0.0 && knot < r) cuts.push_back(knot);
  }
  double upper = r;
  if (w.kind() == WeightKind::gaussian) upper = std::min(r, 12.0);
  cuts.push_back(upper);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, cuts[i], cuts[i + 1], 10,
                                                                          1e-12);
  }
  return sphere * total;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo) || per_decade < 1) throw std::invalid_argument("log_grid: bad range");
  const double decades = std::log10(hi / lo);
  const int steps = std::max(1, static_cast<int>(std::lround(decades * per_decade)));
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i) g.push_back(lo * std::pow(10.0, decades * i / steps));
  g.back() = hi;
  return g;
}

namespace {

struct Trend {
  double slope = 0.0;
  bool decreasing = false;
};

// Trend of the ratio over rows[first..last] (inclusive, increasing r).
Trend trend(const std::vector<AdmissibilityRow>& rows, std::size_t first, std::size_t last) {
  Trend t;
  const auto& a = rows[first];
  const auto& b = rows[last];
  if (!(a.ratio > 0.0) || !(b.ratio > 0.0)) return t;
  t.slope = (std::log(b.ratio) - std::log(a.ratio)) / (std::log(b.r) - std::log(a.r));
  t.decreasing = true;
  for (std::size_t i = first; i < last; ++i)
    if (rows[i + 1].ratio > rows[i].ratio * (1.0 + 1e-12)) t.decreasing = false;
  return t;
}

}  // namespace

AdmissibilityScan admissibility_scan(const Weight& w, int n, const std::vector<double>& r_grid) {
  if (r_grid.size() < 2) throw std::invalid_argument("admissibility_scan: grid too small");
  if (!std::is_sorted(r_grid.begin(), r_grid.end()) || !(r_grid.front() > 0.0))
    throw std::invalid_argument("admissibility_scan: grid must be positive and increasing");
  if (std::log10(r_grid.back() / r_grid.front()) < 4.0 - 1e-9)
    throw std::invalid_argument("admissibility_scan: grid must span at least four decades");

  constexpr double kMinSlope = -0.05;
  AdmissibilityScan scan;
  const double expo = w.beta() / (n + 1);
  for (double r : r_grid) {
    const double m = ball_mass(w, n, r);
    scan.rows.push_back({r, m, std::pow(m, expo) / r});
  }
  const std::size_t last = scan.rows.size() - 1;
  std::size_t lo_end = 0;
  while (lo_end < last && scan.rows[lo_end + 1].r <= r_grid.front() * 10.0 * (1.0 + 1e-12)) ++lo_end;
  std::size_t hi_begin = last;
  while (hi_begin > 0 && scan.rows[hi_begin - 1].r >= r_grid.back() / 10.0 * (1.0 - 1e-12)) --hi_begin;

  const Trend low = trend(scan.rows, 0, lo_end);
  const Trend high = trend(scan.rows, hi_begin, last);
  scan.slope_at_zero = low.slope;
  scan.slope_at_infinity = high.slope;
  scan.blows_up_at_zero = low.decreasing && low.slope <= kMinSlope;
  scan.decays_at_infinity = high.decreasing && high.slope <= kMinSlope;
  return scan;
}

}  // namespace wmink
