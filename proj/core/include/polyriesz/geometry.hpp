#ifndef POLYRIESZ_GEOMETRY_HPP
#define POLYRIESZ_GEOMETRY_HPP

#include <cmath>
#include <vector>

namespace polyriesz {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {c * x, c * y}; }
  Vec2 operator/(double c) const { return {x / c, y / c}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double c, Vec2 v) { return {c * v.x, c * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
// 90-degree clockwise rotation; for a CCW polygon this maps an edge
// direction to the outward normal.
inline Vec2 perp_cw(Vec2 a) { return {a.y, -a.x}; }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }

// Simple polygon with vertices in counterclockwise order.  Construction
// validates: at least 3 vertices, finite coordinates, positive signed area,
// no self-intersection, no interior angle within 1e-9 of 0, pi, or 2*pi.
class Polygon {
public:
  explicit Polygon(std::vector<Vec2> vertices);

  // Regular n-gon of the given area, centered at the origin, first vertex
  // on the positive x-axis.
  static Polygon regular_ngon(int n, double area);

  int size() const { return static_cast<int>(verts_.size()); }
  const std::vector<Vec2>& vertices() const { return verts_; }
  Vec2 vertex(int i) const { return verts_[wrap(i)]; }
  int wrap(int i) const {
    int n = size();
    int m = i % n;
    return m < 0 ? m + n : m;
  }

  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  bool convex() const { return convex_; }
  Vec2 centroid() const { return centroid_; }

  Polygon translated(Vec2 by) const;
  Polygon rotated(double angle, Vec2 center = {}) const;
  // Reflection across the line through `point` along `axis_dir`; vertex
  // order is reversed so the result stays counterclockwise.
  Polygon reflected(Vec2 point, Vec2 axis_dir) const;
  Polygon scaled(double factor, Vec2 center = {}) const;

private:
  std::vector<Vec2> verts_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  bool convex_ = false;
  Vec2 centroid_;
};

// Per-side geometry: endpoints a=P_i, b=P_{i+1}, outward unit normal,
// interior angles at both endpoints, and the angles reduced mod pi (used by
// the tilting construction at concave vertices).
struct SideData {
  int index = 0;
  Vec2 a, b;
  double length = 0.0;
  Vec2 tangent;   // unit, a -> b
  Vec2 normal;    // unit, outward
  Vec2 midpoint;
  double angle_start = 0.0;    // interior angle at a
  double angle_end = 0.0;      // interior angle at b
  double reduced_start = 0.0;  // angle_start mod pi, in (0,pi)
  double reduced_end = 0.0;
};

// Interior angle at vertex i, in (0,2*pi).
double interior_angle(const Polygon& p, int i);

std::vector<SideData> side_data(const Polygon& p);
SideData side_data(const Polygon& p, int side);

// cot(theta) + 1/sin(theta) for theta in (0,pi); throws std::domain_error
// outside.  Equals cot(theta/2) and is strictly decreasing.
double psi(double theta);
// Same expression on (0,pi) u (pi,2*pi); stationarity formulas use this so
// concave vertices are covered.
double psi_extended(double theta);

// Steiner symmetrization: slices parallel to `direction` are recentered on
// the perpendicular axis.  Area is preserved; the result is symmetric and
// convex.  Every slice must be a single interval (always true for convex
// input); otherwise throws UnsupportedInput.
Polygon steiner_symmetrize(const Polygon& p, Vec2 direction);

}  // namespace polyriesz

#endif
