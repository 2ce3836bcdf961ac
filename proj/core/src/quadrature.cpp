#include "polyriesz/quadrature.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace polyriesz {

void QuadratureSpec::validate() const {
  if (angular_nodes < 2 || line_nodes < 2)
    throw std::invalid_argument("quadrature node counts must be at least 2");
  if (outer_triangle_order < 1) throw std::invalid_argument("triangle rule order must be >= 1");
  if (max_subdivision_depth < 0) throw std::invalid_argument("subdivision depth must be >= 0");
  if (!(tolerance > 0.0) || !(tolerance < 1e-2))
    throw std::invalid_argument("tolerance must lie in (0, 1e-2)");
}

namespace {

GaussRule make_gauss(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  // Newton iteration on P_n, seeded with the Chebyshev approximation.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre supports 1..256 nodes");
  // Lock-free fast path; rules are built once and never freed.
  static std::array<std::atomic<const GaussRule*>, 257> cache{};
  std::atomic<const GaussRule*>& slot = cache[static_cast<size_t>(n)];
  const GaussRule* r = slot.load(std::memory_order_acquire);
  if (r) return *r;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  r = slot.load(std::memory_order_acquire);
  if (!r) {
    r = new GaussRule(make_gauss(n));
    slot.store(r, std::memory_order_release);
  }
  return *r;
}

std::vector<TrianglePoint> triangle_rule(double ax, double ay, double bx, double by, double cx,
                                         double cy, int order) {
  // Map the unit square to the reference triangle, x = u(1-v), y = v, with
  // Jacobian (1-v).  Exactness `order` in (x,y) needs GL orders covering
  // degree `order` in u and `order`+1 in v.
  int nu = (order + 2) / 2;
  int nv = (order + 3) / 2;
  const GaussRule& ru = gauss_legendre(nu);
  const GaussRule& rv = gauss_legendre(nv);
  double jac = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);  // 2*area, signed
  std::vector<TrianglePoint> pts;
  pts.reserve(static_cast<size_t>(nu) * nv);
  for (int i = 0; i < nu; ++i) {
    double u = 0.5 * (ru.nodes[i] + 1.0), wu = 0.5 * ru.weights[i];
    for (int j = 0; j < nv; ++j) {
      double v = 0.5 * (rv.nodes[j] + 1.0), wv = 0.5 * rv.weights[j];
      double s = u * (1.0 - v), t = v;
      TrianglePoint p;
      p.x = ax + s * (bx - ax) + t * (cx - ax);
      p.y = ay + s * (by - ay) + t * (cy - ay);
      p.w = wu * wv * (1.0 - v) * jac;
      pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace polyriesz
