#ifndef POLYRIESZ_QUADRATURE_HPP
#define POLYRIESZ_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "polyriesz/errors.hpp"

namespace polyriesz {

// Quadrature plan shared across potential/energy/stationarity evaluations.
// tolerance is relative to the magnitude of the quantity being computed.
struct QuadratureSpec {
  int angular_nodes = 32;        // Gauss nodes per angular panel (fan integrals)
  int line_nodes = 48;           // Gauss nodes per panel on boundary segments
  int outer_triangle_order = 7;  // polynomial exactness of the area rule
  int max_subdivision_depth = 10;
  double tolerance = 1e-8;

  void validate() const;
};

// Value with an accumulated error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;

  Estimate operator+(const Estimate& o) const { return {value + o.value, error + o.error}; }
  Estimate operator-(const Estimate& o) const { return {value - o.value, error + o.error}; }
  Estimate operator*(double c) const { return {value * c, error * std::abs(c)}; }
  Estimate& operator+=(const Estimate& o) { value += o.value; error += o.error; return *this; }
};

inline Estimate operator*(double c, const Estimate& e) { return e * c; }

// Nodes and weights for n-point Gauss-Legendre on [-1,1].  Cached per n.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre(int n);

// Single-panel Gauss-Legendre of f over [a,b].
template <class F>
double gauss_panel(F&& f, double a, double b, int n) {
  const GaussRule& r = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += r.weights[i] * f(mid + half * r.nodes[i]);
  return acc * half;
}

namespace detail {

template <size_t K, class F>
std::array<double, K> vec_panel(F&& f, double a, double b, int n) {
  const GaussRule& r = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::array<double, K> acc{};
  for (int i = 0; i < n; ++i) {
    std::array<double, K> v = f(mid + half * r.nodes[i]);
    for (size_t k = 0; k < K; ++k) acc[k] += r.weights[i] * v[k];
  }
  for (size_t k = 0; k < K; ++k) acc[k] *= half;
  return acc;
}

template <size_t K, class F>
void adaptive_rec(F&& f, double a, double b, const std::array<double, K>& whole, int n,
                  double tol, double noise_floor, int depth, int max_depth,
                  std::array<Estimate, K>& out, bool& converged) {
  double m = 0.5 * (a + b);
  std::array<double, K> left = vec_panel<K>(f, a, m, n);
  std::array<double, K> right = vec_panel<K>(f, m, b, n);
  double err = 0.0;
  for (size_t k = 0; k < K; ++k) err += std::abs(left[k] + right[k] - whole[k]);
  if (err <= std::max(tol, noise_floor) || depth >= max_depth) {
    if (err > std::max(tol, noise_floor)) converged = false;
    for (size_t k = 0; k < K; ++k) {
      out[k].value += left[k] + right[k];
      out[k].error += std::abs(left[k] + right[k] - whole[k]);
    }
    return;
  }
  adaptive_rec<K>(f, a, m, left, n, 0.5 * tol, 0.5 * noise_floor, depth + 1, max_depth, out,
                  converged);
  adaptive_rec<K>(f, m, b, right, n, 0.5 * tol, 0.5 * noise_floor, depth + 1, max_depth, out,
                  converged);
}

}  // namespace detail

// Adaptive bisection of a K-component integrand over [a,b] to an absolute
// tolerance.  noise_floor prevents chasing refinement below the caller's
// known evaluation noise.  Throws AccuracyError if the depth budget is
// exhausted with the target clearly missed.
template <size_t K, class F>
std::array<Estimate, K> integrate_adaptive_vec(F&& f, double a, double b, int nodes,
                                               double abs_tol, int max_depth,
                                               double noise_floor = 0.0) {
  std::array<Estimate, K> out{};
  if (a == b) return out;
  std::array<double, K> whole = detail::vec_panel<K>(f, a, b, nodes);
  bool converged = true;
  detail::adaptive_rec<K>(f, a, b, whole, nodes, abs_tol, noise_floor, 0, max_depth, out,
                          converged);
  if (!converged) {
    double total_err = 0.0, total_val = 0.0;
    for (const auto& e : out) { total_err += e.error; total_val += std::abs(e.value); }
    if (total_err > 100.0 * std::max(abs_tol, noise_floor) + 1e-13 * total_val)
      throw AccuracyError("adaptive quadrature did not converge", out[0].value, total_err);
  }
  return out;
}

template <class F>
Estimate integrate_adaptive(F&& f, double a, double b, int nodes, double abs_tol, int max_depth,
                            double noise_floor = 0.0) {
  auto wrap = [&f](double x) { return std::array<double, 1>{f(x)}; };
  return integrate_adaptive_vec<1>(wrap, a, b, nodes, abs_tol, max_depth, noise_floor)[0];
}

// Quadrature points for the triangle (a,b,c) with polynomial exactness
// `order`: conical-product Gauss rule.  Weights sum to the triangle area.
struct TrianglePoint {
  double x, y, w;
};
std::vector<TrianglePoint> triangle_rule(double ax, double ay, double bx, double by, double cx,
                                         double cy, int order);

}  // namespace polyriesz

#endif
