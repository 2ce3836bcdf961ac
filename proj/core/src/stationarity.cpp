#include "polyriesz/stationarity.hpp"

#include <cmath>
#include <numbers>

#include "polyriesz/errors.hpp"

namespace polyriesz {

namespace {

struct Boundary {
  std::vector<SideData> sd;
  std::vector<SideIntegrals> si;
  Estimate sigma;
};

Boundary boundary_integrals(const Polygon& p, const Kernel& k, const QuadratureSpec& q,
                            const ExecPolicy& exec) {
  Boundary b;
  b.sd = side_data(p);
  auto si = parallel_map(static_cast<size_t>(p.size()), exec.threads,
                         [&](size_t i) { return side_integrals(p, k, static_cast<int>(i), q); });
  b.si = std::move(si);
  std::vector<Estimate> terms(p.size());
  for (int i = 0; i < p.size(); ++i) {
    double d = dot(b.sd[i].midpoint, b.sd[i].normal);
    terms[i] = b.si[i].integral_v * d;
  }
  b.sigma = pairwise_sum(terms);
  return b;
}

Estimate sliding_from(const Boundary& b, const Polygon& p, int side, Constraint c) {
  const SideIntegrals& si = b.si[side];
  const SideData& sd = b.sd[side];
  if (c == Constraint::Perimeter) {
    double psis = psi_extended(sd.angle_start) + psi_extended(sd.angle_end);
    return si.integral_v - b.sigma * (psis / p.perimeter());
  }
  return si.integral_v * (1.0 / sd.length) - b.sigma * (1.0 / (2.0 * p.area()));
}

Estimate tilting_from(const Boundary& b, const Polygon& p, int side, Constraint c) {
  const SideIntegrals& si = b.si[side];
  const SideData& sd = b.sd[side];
  Estimate diff = si.half_moment_first - si.half_moment_second;
  if (c == Constraint::Perimeter) {
    double psid = psi_extended(sd.angle_start) - psi_extended(sd.angle_end);
    diff = diff - b.sigma * (sd.length * psid / (2.0 * p.perimeter()));
  }
  return diff;
}

// Angles between the diagonal P_{i-1}P_{i+1} and the two incident sides.
void diagonal_angles(const Polygon& p, int vertex, double& alpha_minus, double& alpha_plus) {
  Vec2 prev = p.vertex(vertex - 1), cur = p.vertex(vertex), next = p.vertex(vertex + 1);
  Vec2 diag = next - prev;
  Vec2 s_in = cur - prev;   // side i-1, from P_{i-1}
  Vec2 s_out = cur - next;  // side i, from P_{i+1}
  alpha_minus = std::atan2(std::abs(cross(diag, s_in)), dot(diag, s_in));
  alpha_plus = std::atan2(std::abs(cross(diag * -1.0, s_out)), dot(diag * -1.0, s_out));
}

Estimate diagonal_from(const Boundary& b, const Polygon& p, int vertex) {
  double am, ap;
  diagonal_angles(p, vertex, am, ap);
  int n = p.size();
  int prev_side = (vertex + n - 1) % n;
  const SideIntegrals& si_in = b.si[prev_side];  // side i-1, anchored at P_{i-1}
  const SideIntegrals& si_out = b.si[vertex];    // side i, anchored at P_{i+1}
  double l_in = b.sd[prev_side].length, l_out = b.sd[vertex].length;
  return si_out.moment_end * (2.0 * std::sin(ap) / l_out) -
         si_in.moment_start * (2.0 * std::sin(am) / l_in);
}

}  // namespace

Estimate lagrange_sigma(const Polygon& p, const Kernel& k, const QuadratureSpec& q) {
  return boundary_integrals(p, k, q, {}).sigma;
}

Estimate sliding_residual(const Polygon& p, const Kernel& k, int side, Constraint c,
                          const QuadratureSpec& q) {
  if (side < 0 || side >= p.size()) throw std::invalid_argument("side index out of range");
  return sliding_from(boundary_integrals(p, k, q, {}), p, side, c);
}

Estimate tilting_residual(const Polygon& p, const Kernel& k, int side, Constraint c,
                          const QuadratureSpec& q) {
  if (side < 0 || side >= p.size()) throw std::invalid_argument("side index out of range");
  return tilting_from(boundary_integrals(p, k, q, {}), p, side, c);
}

Estimate diagonal_first_variation(const Polygon& p, const Kernel& k, int vertex,
                                  const QuadratureSpec& q) {
  if (vertex < 0 || vertex >= p.size()) throw std::invalid_argument("vertex index out of range");
  if (interior_angle(p, vertex) >= std::numbers::pi)
    throw UnsupportedInput("diagonal shift needs a convex vertex");
  return diagonal_from(boundary_integrals(p, k, q, {}), p, vertex);
}

StationarityReport check_stationarity(const Polygon& p, const Kernel& k, Constraint c,
                                      double tolerance, const QuadratureSpec& q,
                                      const ExecPolicy& exec) {
  if (c == Constraint::None)
    throw std::invalid_argument("stationarity check needs an area or perimeter constraint");
  if (tolerance < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
  Boundary b = boundary_integrals(p, k, q, exec);

  StationarityReport rep;
  rep.constraint = c;
  rep.tolerance = tolerance;
  rep.sigma = b.sigma;
  rep.stationary = true;
  for (int i = 0; i < p.size(); ++i) {
    SideResult sr;
    sr.side = i;
    sr.mean = b.si[i].integral_v * (1.0 / b.sd[i].length);
    sr.sliding_area = sliding_from(b, p, i, Constraint::Area);
    sr.sliding_perimeter = sliding_from(b, p, i, Constraint::Perimeter);
    sr.tilting_area = tilting_from(b, p, i, Constraint::Area);
    sr.tilting_perimeter = tilting_from(b, p, i, Constraint::Perimeter);
    rep.sides.push_back(sr);

    const Estimate& sl = (c == Constraint::Area) ? sr.sliding_area : sr.sliding_perimeter;
    const Estimate& ti = (c == Constraint::Area) ? sr.tilting_area : sr.tilting_perimeter;
    rep.sliding_ok.push_back(rep.within(sl));
    rep.tilting_ok.push_back(rep.within(ti));
    if (!rep.sliding_ok.back() || !rep.tilting_ok.back()) rep.stationary = false;
  }
  for (int i = 0; i < p.size(); ++i) {
    VertexResult vr;
    vr.vertex = i;
    vr.convex = interior_angle(p, i) < std::numbers::pi;
    if (vr.convex) vr.diagonal_variation = diagonal_from(b, p, i);
    rep.vertices.push_back(vr);
  }
  return rep;
}

}  // namespace polyriesz
