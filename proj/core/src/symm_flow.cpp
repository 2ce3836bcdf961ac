#include "polyriesz/symm_flow.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "polyriesz/errors.hpp"

namespace polyriesz {

std::vector<double> triangle_recursion(double a0, int n) {
  if (!(a0 > 0.0) || !std::isfinite(a0)) throw UnsupportedInput("half-base must be positive");
  if (n < 0) throw UnsupportedInput("step count must be nonnegative");
  std::vector<double> a;
  a.reserve(n + 1);
  a.push_back(a0);
  if (n >= 1) a.push_back(std::sqrt(a0 * a0 + 1.0 / (a0 * a0)));
  for (int k = 2; k <= n; ++k) {
    double x = a.back();
    a.push_back(std::sqrt(0.25 * x * x + 4.0 / (x * x)));
  }
  return a;
}

std::vector<double> quadrilateral_recursion(double a, int n) {
  if (!(a >= 1.0) || !std::isfinite(a)) {
    throw UnsupportedInput("a unit-area rhombus has side >= 1");
  }
  if (n < 0) throw UnsupportedInput("step count must be nonnegative");
  std::vector<double> out;
  out.reserve(n + 1);
  out.push_back(a);
  for (int k = 1; k <= n; ++k) {
    double x = out.back();
    double x2 = x * x;
    double w = x2 * x2 + 1.0;
    out.push_back(std::sqrt(x2 / w + w / (4.0 * x2)));
  }
  return out;
}

namespace {

Polygon normalize_area(const Polygon& p) {
  return p.scaled(1.0 / std::sqrt(p.area()), p.centroid());
}

Vec2 triangle_direction(const Polygon& p, int step) {
  if (step == 1) return side_data(p, 0).tangent;
  double l[3] = {side_data(p, 0).length, side_data(p, 1).length, side_data(p, 2).length};
  double best = std::numeric_limits<double>::infinity();
  int pick = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      double d = std::abs(l[i] - l[j]);
      if (d < best) {
        best = d;
        pick = i;
      }
    }
  }
  return side_data(p, pick).tangent;
}

Vec2 quad_direction(const Polygon& p) {
  double l[4];
  for (int i = 0; i < 4; ++i) l[i] = side_data(p, i).length;
  double tol = 1e-9 * p.perimeter();
  auto eq = [&](double a, double b) { return std::abs(a - b) <= tol; };

  bool all_equal = eq(l[0], l[1]) && eq(l[1], l[2]) && eq(l[2], l[3]);
  if (all_equal) return side_data(p, 0).tangent;

  double d02 = norm(p.vertex(2) - p.vertex(0));
  double d13 = norm(p.vertex(3) - p.vertex(1));
  if (eq(l[0], l[2]) && eq(l[1], l[3]) && eq(d02, d13)) {
    return normalized(p.vertex(2) - p.vertex(0));
  }
  if (eq(l[3], l[0]) && eq(l[1], l[2])) return normalized(p.vertex(2) - p.vertex(0));
  if (eq(l[0], l[1]) && eq(l[2], l[3])) return normalized(p.vertex(3) - p.vertex(1));

  if (p.convex()) return normalized(p.vertex(2) - p.vertex(0));
  for (int r = 0; r < 4; ++r) {
    if (interior_angle(p, r) > std::numbers::pi) {
      return normalized(p.vertex(r + 2) - p.vertex(r));
    }
  }
  return normalized(p.vertex(2) - p.vertex(0));
}

}  // namespace

SymmetrizationResult symmetrization_run(const Polygon& p, const Kernel& k, int steps,
                                        const QuadratureSpec& q, const ExecPolicy& exec) {
  const int n = p.size();
  if (n != 3 && n != 4) {
    throw UnsupportedInput("symmetrization run handles triangles and quadrilaterals, got " +
                           std::to_string(n) + " vertices");
  }
  if (steps < 0) throw UnsupportedInput("step count must be nonnegative");

  Polygon cur = normalize_area(p);
  SymmetrizationResult out{cur, energy(cur, k, q, exec), {}};
  out.steps.reserve(steps);
  for (int s = 1; s <= steps; ++s) {
    Vec2 dir = n == 3 ? triangle_direction(cur, s) : quad_direction(cur);
    Polygon next = normalize_area(steiner_symmetrize(cur, dir));
    out.steps.push_back({s, dir, next, energy(next, k, q, exec)});
    cur = next;
  }
  return out;
}

}  // namespace polyriesz
