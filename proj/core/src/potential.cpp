#include "polyriesz/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyriesz {

namespace {

// One fan wedge: apex x, far segment from a to b (relative coordinates
// already subtracted).  The wedge integral is int M(R(theta)) d(theta) with
// R the distance to the chord; the sign rides on the signed span.
Estimate fan_wedge(const Kernel& k, Vec2 a, Vec2 b, const QuadratureSpec& q, double abs_tol) {
  double c = cross(a, b);
  if (c == 0.0) return {};
  double span = std::atan2(c, dot(a, b));
  double th0 = std::atan2(a.y, a.x);
  Vec2 e = b - a;
  double rmax = std::max(norm(a), norm(b));
  auto radial = [&](double s) {
    double th = th0 + s * span;
    Vec2 u{std::cos(th), std::sin(th)};
    double den = cross(u, e);
    double r = (std::abs(den) > std::abs(c) / rmax) ? c / den : rmax;
    return k.radial_primitive(std::min(std::abs(r), rmax));
  };
  Estimate est = integrate_adaptive(radial, 0.0, 1.0, q.angular_nodes,
                                    abs_tol / std::max(std::abs(span), 1e-12),
                                    q.max_subdivision_depth);
  return est * span;
}

}  // namespace

Estimate potential_at(const Polygon& p, const Kernel& k, Vec2 x, const QuadratureSpec& q) {
  q.validate();
  int n = p.size();
  const std::vector<Vec2>& vs = p.vertices();
  // Rough non-adaptive pass fixes the absolute tolerance for the real one.
  double rough = 0.0;
  for (int i = 0; i < n; ++i) {
    Vec2 a = vs[i] - x, b = vs[(i + 1) % n] - x;
    double c = cross(a, b);
    if (c == 0.0) continue;
    double span = std::atan2(c, dot(a, b));
    rough += span * k.radial_primitive(0.5 * (norm(a) + norm(b)));
  }
  double abs_tol = q.tolerance * std::max(std::abs(rough), 1e-300) / n;

  Estimate total;
  for (int i = 0; i < n; ++i)
    total += fan_wedge(k, vs[i] - x, vs[(i + 1) % n] - x, q, abs_tol);
  // The summed wedges cannot be trusted past roundoff of the pieces.
  total.error = std::max(total.error,
                         8.0 * std::numeric_limits<double>::epsilon() * std::abs(total.value));
  return total;
}

namespace {

// integral of v and of v * (arclength) over the segment [A,B], one adaptive
// pass with a two-component integrand.
std::array<Estimate, 2> segment_moments(const Polygon& p, const Kernel& k, Vec2 A, Vec2 B,
                                        const QuadratureSpec& q) {
  double len = norm(B - A);
  Vec2 t = (B - A) / len;
  auto f = [&](double s) -> std::array<double, 2> {
    Estimate v = potential_at(p, k, A + t * s, q);
    return {v.value, v.value * s};
  };
  // The integrand carries quadrature noise of its own; refining below that
  // level is wasted work, so pass it as a floor.
  Estimate probe = potential_at(p, k, (A + B) * 0.5, q);
  double noise = (probe.error + q.tolerance * std::abs(probe.value)) * len;
  double abs_tol = q.tolerance * std::max(std::abs(probe.value) * len, 1e-300);
  auto est = integrate_adaptive_vec<2>(f, 0.0, len, q.line_nodes, abs_tol,
                                       q.max_subdivision_depth, noise);
  // Account for the per-node evaluation noise in the reported bounds.
  est[0].error += probe.error * len;
  est[1].error += probe.error * len * len * 0.5;
  return est;
}

}  // namespace

SideIntegrals side_integrals(const Polygon& p, const Kernel& k, int side,
                             const QuadratureSpec& q) {
  SideData sd = side_data(p, side);
  Vec2 M = sd.midpoint;
  double h = 0.5 * sd.length;
  auto first = segment_moments(p, k, sd.a, M, q);   // s measured from P_i
  auto second = segment_moments(p, k, M, sd.b, q);  // s measured from M_i

  SideIntegrals out;
  out.integral_v = first[0] + second[0];
  // |x - M_i| = h - s on the first half, s on the second.
  out.half_moment_first = first[0] * h - first[1];
  out.half_moment_second = second[1];
  // |x - P_i| = s on the first half, h + s on the second.
  out.moment_start = first[1] + second[0] * h + second[1];
  // |x - P_{i+1}| = l - s on the first half, h - s on the second.
  out.moment_end = first[0] * sd.length - first[1] + second[0] * h - second[1];
  return out;
}

Estimate side_mean_potential(const Polygon& p, const Kernel& k, int side,
                             const QuadratureSpec& q) {
  SideData sd = side_data(p, side);
  return side_integrals(p, k, side, q).integral_v * (1.0 / sd.length);
}

Estimate side_half_moment(const Polygon& p, const Kernel& k, int side, SideHalf half,
                          const QuadratureSpec& q) {
  SideIntegrals si = side_integrals(p, k, side, q);
  return half == SideHalf::First ? si.half_moment_first : si.half_moment_second;
}

Estimate side_vertex_moment(const Polygon& p, const Kernel& k, int side, SideAnchor anchor,
                            const QuadratureSpec& q) {
  SideIntegrals si = side_integrals(p, k, side, q);
  return anchor == SideAnchor::Start ? si.moment_start : si.moment_end;
}

}  // namespace polyriesz
