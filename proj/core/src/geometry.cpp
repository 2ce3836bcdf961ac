#include "polyriesz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polyriesz/errors.hpp"

namespace polyriesz {

namespace {

constexpr double kAngleEps = 1e-9;

double signed_area(const std::vector<Vec2>& v) {
  double a = 0.0;
  int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i) a += cross(v[i], v[(i + 1) % n]);
  return 0.5 * a;
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  auto orient = [](Vec2 p, Vec2 q, Vec2 r) { return cross(q - p, r - p); };
  double o1 = orient(a, b, c), o2 = orient(a, b, d);
  double o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0))) return true;
  // Collinear overlaps count as intersections too.
  auto on_seg = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  if (o1 == 0 && on_seg(a, b, c)) return true;
  if (o2 == 0 && on_seg(a, b, d)) return true;
  if (o3 == 0 && on_seg(c, d, a)) return true;
  if (o4 == 0 && on_seg(c, d, b)) return true;
  return false;
}

}  // namespace

Polygon::Polygon(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  int n = static_cast<int>(verts_.size());
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (const auto& v : verts_) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw std::invalid_argument("polygon vertex is not finite");
  }
  double scale = 0.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, norm(verts_[i] - verts_[(i + 1) % n]));
  for (int i = 0; i < n; ++i) {
    if (norm(verts_[i] - verts_[(i + 1) % n]) <= 1e-14 * std::max(scale, 1.0))
      throw std::invalid_argument("polygon has a zero-length side");
  }

  area_ = signed_area(verts_);
  if (area_ <= 0.0)
    throw std::invalid_argument("polygon vertices must be in counterclockwise order");

  // Non-adjacent sides must not intersect.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (j == i || j == (i + 1) % n || (j + 1) % n == i) continue;
      if (segments_intersect(verts_[i], verts_[(i + 1) % n], verts_[j], verts_[(j + 1) % n]))
        throw std::invalid_argument("polygon sides intersect");
    }
  }

  perimeter_ = 0.0;
  convex_ = true;
  for (int i = 0; i < n; ++i) {
    perimeter_ += norm(verts_[(i + 1) % n] - verts_[i]);
    Vec2 e0 = verts_[i] - verts_[wrap(i - 1)];
    Vec2 e1 = verts_[(i + 1) % n] - verts_[i];
    if (cross(e0, e1) < 0.0) convex_ = false;
    double turn = std::atan2(cross(e0, e1), dot(e0, e1));
    double theta = std::numbers::pi - turn;  // interior angle, in (0,2*pi)
    if (theta < kAngleEps || std::abs(theta - std::numbers::pi) < kAngleEps ||
        theta > 2.0 * std::numbers::pi - kAngleEps)
      throw std::invalid_argument("polygon has a degenerate interior angle");
  }

  Vec2 c{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    Vec2 a = verts_[i], b = verts_[(i + 1) % n];
    double w = cross(a, b);
    c += (a + b) * w;
  }
  centroid_ = c / (6.0 * area_);
}

Polygon Polygon::regular_ngon(int n, double area) {
  if (n < 3) throw std::invalid_argument("regular_ngon needs n >= 3");
  if (!(area > 0.0) || !std::isfinite(area))
    throw std::invalid_argument("regular_ngon needs positive area");
  double two_pi = 2.0 * std::numbers::pi;
  double r = std::sqrt(2.0 * area / (n * std::sin(two_pi / n)));
  std::vector<Vec2> v(n);
  for (int i = 0; i < n; ++i) {
    double t = two_pi * i / n;
    v[i] = {r * std::cos(t), r * std::sin(t)};
  }
  return Polygon(std::move(v));
}

Polygon Polygon::translated(Vec2 by) const {
  std::vector<Vec2> v = verts_;
  for (auto& p : v) p += by;
  return Polygon(std::move(v));
}

Polygon Polygon::rotated(double angle, Vec2 center) const {
  double c = std::cos(angle), s = std::sin(angle);
  std::vector<Vec2> v = verts_;
  for (auto& p : v) {
    Vec2 d = p - center;
    p = center + Vec2{c * d.x - s * d.y, s * d.x + c * d.y};
  }
  return Polygon(std::move(v));
}

Polygon Polygon::reflected(Vec2 point, Vec2 axis_dir) const {
  if (norm(axis_dir) <= 0.0) throw std::invalid_argument("reflection axis is degenerate");
  Vec2 u = normalized(axis_dir);
  std::vector<Vec2> v = verts_;
  for (auto& p : v) {
    Vec2 d = p - point;
    Vec2 along = u * dot(d, u);
    p = point + along * 2.0 - d;
  }
  std::reverse(v.begin(), v.end());
  return Polygon(std::move(v));
}

Polygon Polygon::scaled(double factor, Vec2 center) const {
  if (!(factor > 0.0) || !std::isfinite(factor))
    throw std::invalid_argument("scale factor must be positive");
  std::vector<Vec2> v = verts_;
  for (auto& p : v) p = center + (p - center) * factor;
  return Polygon(std::move(v));
}

double interior_angle(const Polygon& p, int i) {
  Vec2 e0 = p.vertex(i) - p.vertex(i - 1);
  Vec2 e1 = p.vertex(i + 1) - p.vertex(i);
  double turn = std::atan2(cross(e0, e1), dot(e0, e1));
  return std::numbers::pi - turn;
}

SideData side_data(const Polygon& p, int side) {
  int n = p.size();
  if (side < 0 || side >= n) throw std::invalid_argument("side index out of range");
  SideData s;
  s.index = side;
  s.a = p.vertex(side);
  s.b = p.vertex(side + 1);
  s.length = norm(s.b - s.a);
  s.tangent = (s.b - s.a) / s.length;
  s.normal = perp_cw(s.tangent);
  s.midpoint = (s.a + s.b) * 0.5;
  s.angle_start = interior_angle(p, side);
  s.angle_end = interior_angle(p, side + 1);
  auto reduce = [](double t) {
    return t < std::numbers::pi ? t : t - std::numbers::pi;
  };
  s.reduced_start = reduce(s.angle_start);
  s.reduced_end = reduce(s.angle_end);
  return s;
}

std::vector<SideData> side_data(const Polygon& p) {
  std::vector<SideData> out;
  out.reserve(p.size());
  for (int i = 0; i < p.size(); ++i) out.push_back(side_data(p, i));
  return out;
}

double psi(double theta) {
  if (!(theta > 0.0) || !(theta < std::numbers::pi))
    throw std::domain_error("psi needs theta in (0,pi)");
  return std::cos(theta) / std::sin(theta) + 1.0 / std::sin(theta);
}

double psi_extended(double theta) {
  if (!(theta > 0.0) || !(theta < 2.0 * std::numbers::pi) ||
      std::abs(theta - std::numbers::pi) < 1e-12)
    throw std::domain_error("psi_extended needs theta in (0,pi) u (pi,2pi)");
  return std::cos(theta) / std::sin(theta) + 1.0 / std::sin(theta);
}

Polygon steiner_symmetrize(const Polygon& p, Vec2 direction) {
  if (norm(direction) <= 0.0) throw std::invalid_argument("direction is degenerate");

  // Rotate so the slicing direction becomes vertical.
  double ang = std::numbers::pi / 2.0 - std::atan2(direction.y, direction.x);
  double c = std::cos(ang), s = std::sin(ang);
  auto rot = [&](Vec2 v) { return Vec2{c * v.x - s * v.y, s * v.x + c * v.y}; };
  auto rot_back = [&](Vec2 v) { return Vec2{c * v.x + s * v.y, -s * v.x + c * v.y}; };

  int n = p.size();
  std::vector<Vec2> rv(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    rv[i] = rot(p.vertices()[i]);
    scale = std::max(scale, std::abs(rv[i].x));
    scale = std::max(scale, std::abs(rv[i].y));
  }
  double tol = 1e-12 * std::max(scale, 1.0);

  std::vector<double> xs;
  for (const auto& v : rv) xs.push_back(v.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [&](double a, double b) { return std::abs(a - b) <= tol; }),
           xs.end());

  // Every slice must be a single interval for the chord construction to
  // describe the region.  Convex polygons always qualify; otherwise probe
  // one generic abscissa per breakpoint gap and count boundary crossings.
  if (!p.convex()) {
    for (size_t k = 0; k + 1 < xs.size(); ++k) {
      double xm = 0.5 * (xs[k] + xs[k + 1]);
      int crossings = 0;
      for (int i = 0; i < n; ++i) {
        if ((rv[i].x - xm) * (rv[(i + 1) % n].x - xm) < 0.0) ++crossings;
      }
      if (crossings != 2) {
        throw UnsupportedInput("slices along this direction are not intervals");
      }
    }
  }

  // Vertical chord length at each breakpoint.  The chord length is
  // piecewise linear with breakpoints at vertex abscissas, so sampling
  // there is exact.
  std::vector<double> hs(xs.size());
  for (size_t k = 0; k < xs.size(); ++k) {
    double bx = xs[k];
    double ylo = std::numeric_limits<double>::infinity();
    double yhi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      Vec2 a = rv[i], b = rv[(i + 1) % n];
      if (std::abs(a.x - bx) <= tol) { ylo = std::min(ylo, a.y); yhi = std::max(yhi, a.y); }
      if (std::abs(b.x - bx) <= tol) { ylo = std::min(ylo, b.y); yhi = std::max(yhi, b.y); }
      if ((a.x - bx) * (b.x - bx) < 0.0) {
        double y = a.y + (bx - a.x) * (b.y - a.y) / (b.x - a.x);
        ylo = std::min(ylo, y);
        yhi = std::max(yhi, y);
      }
    }
    hs[k] = std::max(0.0, yhi - ylo);
  }

  std::vector<Vec2> out;
  for (size_t k = 0; k < xs.size(); ++k) out.push_back({xs[k], -0.5 * hs[k]});
  for (size_t k = xs.size(); k-- > 0;) {
    if (hs[k] > tol) out.push_back({xs[k], 0.5 * hs[k]});
  }
  // Degenerate end chords leave duplicate points; drop them.
  std::vector<Vec2> dedup;
  for (const auto& v : out) {
    if (dedup.empty() || norm(v - dedup.back()) > tol) dedup.push_back(v);
  }
  while (dedup.size() > 1 && norm(dedup.front() - dedup.back()) <= tol) dedup.pop_back();
  // Drop collinear vertices (straight chords across a breakpoint).
  std::vector<Vec2> clean;
  int m = static_cast<int>(dedup.size());
  for (int i = 0; i < m; ++i) {
    Vec2 prev = dedup[(i + m - 1) % m], cur = dedup[i], next = dedup[(i + 1) % m];
    if (std::abs(cross(cur - prev, next - cur)) > tol * (norm(cur - prev) + norm(next - cur)))
      clean.push_back(cur);
  }
  if (clean.size() < 3) throw UnsupportedInput("symmetrized polygon is degenerate");
  for (auto& v : clean) v = rot_back(v);
  return Polygon(std::move(clean));
}

}  // namespace polyriesz
