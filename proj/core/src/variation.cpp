#include "polyriesz/variation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "polyriesz/energy.hpp"
#include "polyriesz/errors.hpp"
#include "polyriesz/potential.hpp"

namespace polyriesz {

namespace {

constexpr double kPi = 3.14159265358979323846;

int wrap_index(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

void check_side_index(const FlowSpec& spec, int n) {
  if (spec.index < 0 || spec.index >= n) {
    throw UnsupportedInput("flow index " + std::to_string(spec.index) +
                           " out of range for polygon with " + std::to_string(n) + " vertices");
  }
}

// Reduced interior angle and the displacement direction along the adjacent
// side line; concave vertices flip the direction.
struct VertexLine {
  double theta_reduced;
  Vec2 tau;
};

VertexLine vertex_line(const Polygon& p, int j, bool incoming) {
  double theta = interior_angle(p, j);
  Vec2 base = incoming ? normalized(p.vertex(j) - p.vertex(j - 1))
                       : normalized(p.vertex(j) - p.vertex(j + 1));
  if (theta > kPi) return {theta - kPi, -1.0 * base};
  return {theta, base};
}

struct QuadFrame {
  Vec2 origin;
  Vec2 e1, e2;
  int up, low;
  double height_up;   // e2-coordinate of the upper off-diagonal vertex
  double height_low;  // |e2-coordinate| of the lower one
};

QuadFrame quad_frame(const Polygon& p, const FlowSpec& spec) {
  if (p.size() != 4) throw UnsupportedInput("two-sided flow needs a quadrilateral");
  if (spec.beta_plus < 0 || spec.beta_minus < 0) {
    throw UnsupportedInput("shear rates must be nonnegative");
  }
  int d = wrap_index(spec.diagonal, 4);
  QuadFrame f;
  Vec2 pd = p.vertex(d), po = p.vertex(d + 2);
  f.origin = 0.5 * (pd + po);
  f.e1 = normalized(po - pd);
  f.e2 = {-f.e1.y, f.e1.x};
  f.low = wrap_index(d + 1, 4);
  f.up = wrap_index(d + 3, 4);
  double s_low = dot(p.vertex(f.low) - f.origin, f.e2);
  double s_up = dot(p.vertex(f.up) - f.origin, f.e2);
  if (!(s_low < 0.0 && s_up > 0.0)) {
    throw UnsupportedInput("diagonal is not interior to the quadrilateral");
  }
  f.height_up = s_up;
  f.height_low = -s_low;
  return f;
}

std::vector<Vec2> flow_positions(const Polygon& p, const FlowSpec& spec, double t) {
  const int n = p.size();
  std::vector<Vec2> v = p.vertices();
  switch (spec.family) {
    case FlowSpec::Family::Sliding: {
      check_side_index(spec, n);
      int i = spec.index, ip = wrap_index(i + 1, n);
      v[i] += (t / std::sin(interior_angle(p, i))) * normalized(p.vertex(i) - p.vertex(i - 1));
      v[ip] += (t / std::sin(interior_angle(p, ip))) * normalized(p.vertex(ip) - p.vertex(ip + 1));
      break;
    }
    case FlowSpec::Family::Tilting: {
      check_side_index(spec, n);
      int i = spec.index, ip = wrap_index(i + 1, n);
      double len = norm(p.vertex(ip) - p.vertex(i));
      VertexLine start = vertex_line(p, i, true);
      VertexLine end = vertex_line(p, ip, false);
      if (t >= start.theta_reduced || t <= start.theta_reduced - kPi) {
        throw std::range_error("tilt parameter reaches the adjacent side line at vertex " +
                               std::to_string(i));
      }
      if (-t >= end.theta_reduced || -t <= end.theta_reduced - kPi) {
        throw std::range_error("tilt parameter reaches the adjacent side line at vertex " +
                               std::to_string(ip));
      }
      v[i] += (len * std::sin(t) / (2.0 * std::sin(start.theta_reduced - t))) * start.tau;
      v[ip] -= (len * std::sin(t) / (2.0 * std::sin(end.theta_reduced + t))) * end.tau;
      break;
    }
    case FlowSpec::Family::DiagonalVertex: {
      check_side_index(spec, n);
      int i = spec.index;
      if (interior_angle(p, i) >= kPi) {
        throw UnsupportedInput("vertex " + std::to_string(i) +
                               " is not convex; no interior diagonal direction");
      }
      v[i] += t * normalized(p.vertex(i + 1) - p.vertex(i - 1));
      break;
    }
    case FlowSpec::Family::QuadTwoSided: {
      QuadFrame f = quad_frame(p, spec);
      v[f.up] += (spec.beta_plus * f.height_up * t) * f.e1;
      v[f.low] += (spec.beta_minus * f.height_low * t) * f.e1;
      break;
    }
  }
  return v;
}

}  // namespace

Polygon apply_flow(const Polygon& p, const FlowSpec& spec, double t) {
  if (!std::isfinite(t)) throw UnsupportedInput("flow parameter must be finite");
  std::vector<Vec2> v = flow_positions(p, spec, t);
  try {
    return Polygon(v);
  } catch (const std::invalid_argument& e) {
    throw std::range_error("flow parameter " + std::to_string(t) +
                           " degenerates the polygon: " + e.what());
  }
}

double max_flow_parameter(const Polygon& p, const FlowSpec& spec) {
  const int n = p.size();
  double t0 = 0.0;
  switch (spec.family) {
    case FlowSpec::Family::Sliding: {
      check_side_index(spec, n);
      int i = spec.index, ip = wrap_index(i + 1, n);
      double th_i = interior_angle(p, i), th_ip = interior_angle(p, ip);
      SideData prev = side_data(p, wrap_index(i - 1, n));
      SideData next = side_data(p, ip);
      t0 = std::min(std::abs(std::sin(th_i)) * prev.length,
                    std::abs(std::sin(th_ip)) * next.length);
      double c = 1.0 / std::tan(th_i) + 1.0 / std::tan(th_ip);
      if (std::abs(c) > 1e-14) {
        t0 = std::min(t0, side_data(p, i).length / std::abs(c));
      }
      break;
    }
    case FlowSpec::Family::Tilting: {
      check_side_index(spec, n);
      int ip = wrap_index(spec.index + 1, n);
      VertexLine start = vertex_line(p, spec.index, true);
      VertexLine end = vertex_line(p, ip, false);
      t0 = std::min({start.theta_reduced, kPi - start.theta_reduced, end.theta_reduced,
                     kPi - end.theta_reduced});
      break;
    }
    case FlowSpec::Family::DiagonalVertex: {
      check_side_index(spec, n);
      int i = spec.index;
      t0 = std::min(side_data(p, wrap_index(i - 1, n)).length, side_data(p, i).length);
      break;
    }
    case FlowSpec::Family::QuadTwoSided: {
      QuadFrame f = quad_frame(p, spec);
      double rate = std::max(spec.beta_plus * f.height_up, spec.beta_minus * f.height_low);
      double scale = norm(p.vertex(wrap_index(spec.diagonal, 4) + 2) -
                          p.vertex(wrap_index(spec.diagonal, 4)));
      if (rate <= 0.0) return 1e9;
      t0 = 4.0 * scale / rate;
      break;
    }
  }
  for (int k = 0; k < 60; ++k) {
    bool ok = true;
    try {
      apply_flow(p, spec, t0);
      apply_flow(p, spec, -t0);
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok) return 0.5 * t0;
    t0 *= 0.5;
  }
  throw UnsupportedInput("no admissible flow parameter range found");
}

Polygon rescale_constraint(const Polygon& ref, const Polygon& moved, Constraint c) {
  switch (c) {
    case Constraint::None:
      return moved;
    case Constraint::Area:
      return moved.scaled(std::sqrt(ref.area() / moved.area()));
    case Constraint::Perimeter:
      return moved.scaled(ref.perimeter() / moved.perimeter());
  }
  throw UnsupportedInput("unknown constraint");
}

Estimate fd_first_variation(const Polygon& p, const Kernel& k, const FlowSpec& spec, double h,
                            const QuadratureSpec& q, const ExecPolicy& exec) {
  if (!(h > 0.0) || !std::isfinite(h)) throw UnsupportedInput("step must be positive");
  double tmax = max_flow_parameter(p, spec);
  if (h > tmax) {
    throw UnsupportedInput("step " + std::to_string(h) + " exceeds the admissible range " +
                           std::to_string(tmax));
  }
  std::array<double, 4> ts{-h, -0.5 * h, 0.5 * h, h};
  std::array<Estimate, 4> e;
  for (int i = 0; i < 4; ++i) {
    Polygon moved = rescale_constraint(p, apply_flow(p, spec, ts[i]), spec.constraint);
    e[i] = energy(moved, k, q, exec);
  }
  double d_full = (e[3].value - e[0].value) / (2.0 * h);
  double d_half = (e[2].value - e[1].value) / h;
  double value = (4.0 * d_half - d_full) / 3.0;
  double noise = (4.0 * (e[2].error + e[1].error) / h + (e[3].error + e[0].error) / (2.0 * h)) / 3.0;
  double truncation = std::abs(d_half - d_full) / 3.0;
  return {value, noise + truncation};
}

namespace {

// Angles at vertex j between the diagonal P_{j-1} -> P_{j+1} and the two
// incident sides, as in the diagonal first variation.
struct DiagonalAngles {
  double alpha_minus;  // at P_{j-1}, against the incoming side
  double alpha_plus;   // at P_{j+1}, against the outgoing side
};

DiagonalAngles diagonal_angles_at(const Polygon& p, int j) {
  Vec2 diag = p.vertex(j + 1) - p.vertex(j - 1);
  Vec2 in = p.vertex(j) - p.vertex(j - 1);
  Vec2 out = p.vertex(j + 1) - p.vertex(j);
  DiagonalAngles a;
  a.alpha_minus = std::atan2(std::abs(cross(diag, in)), dot(diag, in));
  a.alpha_plus = std::atan2(std::abs(cross(out, diag)), dot(out, diag));
  return a;
}

struct RawVariation {
  Estimate d_energy;
  double d_area = 0.0;
  double d_perimeter = 0.0;
};

RawVariation raw_variation(const Polygon& p, const Kernel& k, const FlowSpec& spec,
                           const QuadratureSpec& q) {
  const int n = p.size();
  RawVariation r;
  switch (spec.family) {
    case FlowSpec::Family::Sliding: {
      check_side_index(spec, n);
      int i = spec.index, ip = wrap_index(i + 1, n);
      SideIntegrals si = side_integrals(p, k, i, q);
      r.d_energy = 2.0 * si.integral_v;
      r.d_area = side_data(p, i).length;
      r.d_perimeter = psi_extended(interior_angle(p, i)) + psi_extended(interior_angle(p, ip));
      break;
    }
    case FlowSpec::Family::Tilting: {
      check_side_index(spec, n);
      int i = spec.index, ip = wrap_index(i + 1, n);
      SideIntegrals si = side_integrals(p, k, i, q);
      r.d_energy = 2.0 * (si.half_moment_first - si.half_moment_second);
      r.d_area = 0.0;
      r.d_perimeter = 0.5 * side_data(p, i).length *
                      (psi_extended(interior_angle(p, i)) - psi_extended(interior_angle(p, ip)));
      break;
    }
    case FlowSpec::Family::DiagonalVertex: {
      check_side_index(spec, n);
      int i = spec.index;
      r.d_energy = diagonal_first_variation(p, k, i, q);
      r.d_area = 0.0;
      DiagonalAngles a = diagonal_angles_at(p, i);
      r.d_perimeter = std::cos(a.alpha_minus) - std::cos(a.alpha_plus);
      break;
    }
    case FlowSpec::Family::QuadTwoSided: {
      QuadFrame f = quad_frame(p, spec);
      Estimate i_up = diagonal_first_variation(p, k, f.up, q);
      Estimate i_low = diagonal_first_variation(p, k, f.low, q);
      double c_up = spec.beta_plus * f.height_up;
      double c_low = spec.beta_minus * f.height_low;
      r.d_energy = c_low * i_low - c_up * i_up;
      r.d_area = 0.0;
      DiagonalAngles au = diagonal_angles_at(p, f.up);
      DiagonalAngles al = diagonal_angles_at(p, f.low);
      r.d_perimeter = c_low * (std::cos(al.alpha_minus) - std::cos(al.alpha_plus)) -
                      c_up * (std::cos(au.alpha_minus) - std::cos(au.alpha_plus));
      break;
    }
  }
  return r;
}

}  // namespace

Estimate analytic_first_variation(const Polygon& p, const Kernel& k, const FlowSpec& spec,
                                  const QuadratureSpec& q) {
  RawVariation raw = raw_variation(p, k, spec, q);
  switch (spec.constraint) {
    case Constraint::None:
      return raw.d_energy;
    case Constraint::Area: {
      if (raw.d_area == 0.0) return raw.d_energy;
      Estimate sigma = lagrange_sigma(p, k, q);
      Estimate corr = (raw.d_area / p.area()) * sigma;
      return raw.d_energy - corr;
    }
    case Constraint::Perimeter: {
      if (raw.d_perimeter == 0.0) return raw.d_energy;
      Estimate sigma = lagrange_sigma(p, k, q);
      Estimate corr = (2.0 * raw.d_perimeter / p.perimeter()) * sigma;
      return raw.d_energy - corr;
    }
  }
  throw UnsupportedInput("unknown constraint");
}

GeometryDerivatives fd_geometry_derivatives(const Polygon& p, const FlowSpec& spec, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw UnsupportedInput("step must be positive");
  auto at = [&](double t) { return apply_flow(p, spec, t); };
  Polygon pp = at(h), pm = at(-h), hp = at(0.5 * h), hm = at(-0.5 * h);
  auto richardson = [&](double fp, double fm, double gp, double gm) {
    double d_full = (fp - fm) / (2.0 * h);
    double d_half = (gp - gm) / h;
    return (4.0 * d_half - d_full) / 3.0;
  };
  GeometryDerivatives g;
  g.d_area = richardson(pp.area(), pm.area(), hp.area(), hm.area());
  g.d_perimeter = richardson(pp.perimeter(), pm.perimeter(), hp.perimeter(), hm.perimeter());
  return g;
}

GeometryDerivatives analytic_geometry_derivatives(const Polygon& p, const FlowSpec& spec) {
  RawVariation r;
  const int n = p.size();
  switch (spec.family) {
    case FlowSpec::Family::Sliding: {
      check_side_index(spec, n);
      int i = spec.index, ip = wrap_index(i + 1, n);
      r.d_area = side_data(p, i).length;
      r.d_perimeter = psi_extended(interior_angle(p, i)) + psi_extended(interior_angle(p, ip));
      break;
    }
    case FlowSpec::Family::Tilting: {
      check_side_index(spec, n);
      int i = spec.index, ip = wrap_index(i + 1, n);
      r.d_perimeter = 0.5 * side_data(p, i).length *
                      (psi_extended(interior_angle(p, i)) - psi_extended(interior_angle(p, ip)));
      break;
    }
    case FlowSpec::Family::DiagonalVertex: {
      check_side_index(spec, n);
      if (interior_angle(p, spec.index) >= kPi) {
        throw UnsupportedInput("vertex is not convex; no interior diagonal direction");
      }
      DiagonalAngles a = diagonal_angles_at(p, spec.index);
      r.d_perimeter = std::cos(a.alpha_minus) - std::cos(a.alpha_plus);
      break;
    }
    case FlowSpec::Family::QuadTwoSided: {
      QuadFrame f = quad_frame(p, spec);
      DiagonalAngles au = diagonal_angles_at(p, f.up);
      DiagonalAngles al = diagonal_angles_at(p, f.low);
      r.d_perimeter = spec.beta_minus * f.height_low *
                          (std::cos(al.alpha_minus) - std::cos(al.alpha_plus)) -
                      spec.beta_plus * f.height_up *
                          (std::cos(au.alpha_minus) - std::cos(au.alpha_plus));
      break;
    }
  }
  return {r.d_area, r.d_perimeter};
}

std::pair<std::vector<Vec2>, double> vertex_gradient(const Polygon& p, const Kernel& k,
                                                     const QuadratureSpec& q,
                                                     const ExecPolicy& exec) {
  const int n = p.size();
  std::vector<SideIntegrals> si =
      parallel_map(static_cast<std::size_t>(n), exec.threads,
                   [&](std::size_t i) { return side_integrals(p, k, static_cast<int>(i), q); });
  std::vector<SideData> sd = side_data(p);
  std::vector<Vec2> grad(n);
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    int im = wrap_index(i - 1, n);
    grad[i] = 2.0 * (si[im].moment_start.value / sd[im].length) * sd[im].normal +
              2.0 * (si[i].moment_end.value / sd[i].length) * sd[i].normal;
    err = std::max(err, 2.0 * (si[im].moment_start.error / sd[im].length +
                               si[i].moment_end.error / sd[i].length));
  }
  return {std::move(grad), err};
}

namespace {

// Horizontal chord of a polygon at the given height; the polygon must cut
// the line in a single interval.
struct Chord {
  double center;
  double radius;
};

Chord chord_at(const Polygon& p, double height) {
  const int n = p.size();
  std::vector<double> xs;
  for (int i = 0; i < n; ++i) {
    Vec2 a = p.vertex(i), b = p.vertex(i + 1);
    double da = a.y - height, db = b.y - height;
    if (da == 0.0 && db == 0.0) {
      xs.push_back(a.x);
      xs.push_back(b.x);
    } else if ((da <= 0.0 && db > 0.0) || (da >= 0.0 && db < 0.0)) {
      xs.push_back(a.x + (b.x - a.x) * (height - a.y) / (b.y - a.y));
    }
  }
  if (xs.size() < 2) {
    throw UnsupportedInput("slice at height " + std::to_string(height) +
                           " does not meet the polygon");
  }
  auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  double r = 0.5 * (*hi - *lo);
  if (!(r > 0.0)) {
    throw UnsupportedInput("slice at height " + std::to_string(height) + " is degenerate");
  }
  return {0.5 * (*lo + *hi), r};
}

}  // namespace

SliceBound slice_derivative_bound_check(const Polygon& p, const Kernel& k, double x2, double y2) {
  if (k.kind() != Kernel::Kind::RegularizedRiesz) {
    throw UnsupportedInput("slice derivative bound needs the regularized kernel");
  }
  if (!p.convex()) {
    throw UnsupportedInput("slice derivative bound needs a convex polygon");
  }
  Chord cx = chord_at(p, x2);
  Chord cy = chord_at(p, y2);
  double l = std::abs(x2 - y2);
  double dc = cx.center - cy.center;

  auto w_prime = [&](double u) {
    double s = std::hypot(l, u);
    if (s == 0.0) return 0.0;
    return k.deriv(s) * (u / s);
  };
  auto overlap = [&](double u) {
    double lo = std::max(cx.center - cx.radius, cy.center - cy.radius + u);
    double hi = std::min(cx.center + cx.radius, cy.center + cy.radius + u);
    return std::max(0.0, hi - lo);
  };

  double span = cx.radius + cy.radius;
  std::array<double, 5> kinks{dc - span, dc - std::abs(cx.radius - cy.radius),
                              std::clamp(0.0, dc - span, dc + span),
                              dc + std::abs(cx.radius - cy.radius), dc + span};
  std::sort(kinks.begin(), kinks.end());
  auto f = [&](double u) { return w_prime(u) * overlap(u); };
  double integral = 0.0;
  for (size_t j = 0; j + 1 < kinks.size(); ++j) {
    double width = kinks[j + 1] - kinks[j];
    if (width < 1e-300) continue;
    double peak = 0.0;
    for (int s = 0; s <= 4; ++s) {
      peak = std::max(peak, std::abs(f(kinks[j] + width * s / 4.0)));
    }
    double tol = std::max(1e-12 * peak * width, 1e-300);
    integral += integrate_adaptive(f, kinks[j], kinks[j + 1], 32, tol, 24, tol).value;
  }

  double apex = -std::numeric_limits<double>::infinity();
  for (const Vec2& v : p.vertices()) apex = std::max(apex, v.y);
  if (!(apex > 0.0)) throw UnsupportedInput("polygon apex must lie above the axis");
  double rate = 1.0 / apex;

  SliceBound out;
  out.lhs = rate * (x2 - y2) * integral;

  double a = 0.5 * std::abs(dc), b = std::abs(dc) + span;
  double cw = std::min(std::abs(w_prime(a)), std::abs(w_prime(b)));
  for (int j = 1; j < 64; ++j) {
    double u = a + (b - a) * j / 64.0;
    cw = std::min(cw, std::abs(w_prime(u)));
  }
  out.rhs = cw * rate * std::min(cx.radius, cy.radius) * std::abs(dc) * std::abs(x2 - y2);
  return out;
}

}  // namespace polyriesz
