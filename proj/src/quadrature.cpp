#include "wmink/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace wmink {

void QuadratureSpec::validate() const {
  if (order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  if (mc_samples < 1000) throw std::invalid_argument("mc_samples must be >= 1000");
}

namespace {

GaussRule make_rule(int order) {
  // boost returns the non-negative zeros of P_order on [-1, 1]
  const auto zeros = boost::math::legendre_p_zeros<double>(order);
  std::vector<double> x;
  for (double z : zeros) {
    x.push_back(z);
    if (z != 0.0) x.push_back(-z);
  }
  std::sort(x.begin(), x.end());
  GaussRule r;
  for (double z : x) {
    const double dp = boost::math::legendre_p_prime<double>(order, z);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes.push_back(0.5 * (z + 1.0));
    r.weights.push_back(0.5 * w);
  }
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

double simplex_volume(std::span<const Vec> vertices) {
  const int k = static_cast<int>(vertices.size()) - 1;
  if (k < 1) return 0.0;
  Eigen::MatrixXd e(vertices[0].size(), k);
  for (int j = 0; j < k; ++j) e.col(j) = vertices[j + 1] - vertices[0];
  const double g = (e.transpose() * e).determinant();
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  return std::sqrt(std::max(g, 0.0)) / fact;
}

namespace {

// Collapsed map: x = v0 + u1 (y - v0), y = v1 + u2 (z - v1), ..., last = v_{k-1} + u_k (v_k - v_{k-1}).
Vec collapsed_point(std::span<const Vec> v, std::span<const double> u) {
  const int k = static_cast<int>(u.size());
  Vec p = v[k];
  for (int j = k - 1; j >= 0; --j) p = v[j] + u[j] * (p - v[j]);
  return p;
}

}  // namespace

double integrate_simplex(std::span<const Vec> vertices, const std::function<double(const Vec&)>& f, int order) {
  const int k = static_cast<int>(vertices.size()) - 1;
  if (k < 1 || k > 3) throw std::invalid_argument("integrate_simplex: simplex dimension must be 1, 2 or 3");
  double fact = 1.0;
  for (int j = 2; j <= k; ++j) fact *= j;
  const double jac = simplex_volume(vertices) * fact;
  if (jac == 0.0) return 0.0;
  const GaussRule& g = gauss_legendre(order);
  const int q = static_cast<int>(g.nodes.size());

  double total = 0.0;
  double u[3];
  int idx[3] = {0, 0, 0};
  while (true) {
    double w = 1.0;
    for (int j = 0; j < k; ++j) {
      u[j] = g.nodes[idx[j]];
      w *= g.weights[idx[j]] * std::pow(u[j], k - 1 - j);
    }
    total += w * f(collapsed_point(vertices, std::span<const double>(u, k)));
    int j = k - 1;
    while (j >= 0 && ++idx[j] == q) idx[j--] = 0;
    if (j < 0) break;
  }
  return jac * total;
}

namespace {

double refine(std::vector<Vec>& v, const std::function<double(const Vec&)>& f, int order, double max_edge,
              int depth) {
  std::size_t a = 0, b = 1;
  double longest = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double len = (v[i] - v[j]).norm();
      if (len > longest) {
        longest = len;
        a = i;
        b = j;
      }
    }
  }
  if (longest <= max_edge || depth <= 0) return integrate_simplex(v, f, order);
  const Vec mid = 0.5 * (v[a] + v[b]);
  const Vec keep = v[b];
  v[b] = mid;
  double total = refine(v, f, order, max_edge, depth - 1);
  v[b] = keep;
  const Vec other = v[a];
  v[a] = mid;
  total += refine(v, f, order, max_edge, depth - 1);
  v[a] = other;
  return total;
}

}  // namespace

double integrate_simplex_refined(std::span<const Vec> vertices, const std::function<double(const Vec&)>& f, int order,
                                 double max_edge, int max_depth) {
  std::vector<Vec> v(vertices.begin(), vertices.end());
  return refine(v, f, order, max_edge, max_depth);
}

Vec sample_simplex(std::span<const Vec> vertices, std::span<const double> uniforms) {
  // sorted-uniforms construction of barycentric coordinates
  const int k = static_cast<int>(vertices.size()) - 1;
  std::vector<double> s(uniforms.begin(), uniforms.begin() + k);
  std::sort(s.begin(), s.end());
  Vec p = Vec::Zero(vertices[0].size());
  double prev = 0.0;
  for (int j = 0; j < k; ++j) {
    p += (s[j] - prev) * vertices[j];
    prev = s[j];
  }
  p += (1.0 - prev) * vertices[k];
  return p;
}

}  // namespace wmink
