#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "polyriesz/quadrature.hpp"

namespace oracle {

using polyriesz::cross;
using polyriesz::dot;
using polyriesz::gauss_panel;
using polyriesz::interior_angle;
using polyriesz::norm;
using polyriesz::side_data;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Chord {
  double a = 0.0;
  double b = 0.0;
  bool ok = false;
};

// Horizontal section [a, b] of a convex polygon at height y.
Chord chord_at(const Polygon& p, double y) {
  Chord c;
  c.a = kInf;
  c.b = -kInf;
  int hits = 0;
  size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    Vec2 u = p.vertex(i), v = p.vertex(i + 1);
    if (u.y == y && v.y == y) {
      c.a = std::min({c.a, u.x, v.x});
      c.b = std::max({c.b, u.x, v.x});
      hits += 2;
      continue;
    }
    if ((u.y - y) * (v.y - y) <= 0.0 && u.y != v.y) {
      double t = (y - u.y) / (v.y - u.y);
      double xx = u.x + t * (v.x - u.x);
      c.a = std::min(c.a, xx);
      c.b = std::max(c.b, xx);
      ++hits;
    }
  }
  c.ok = hits >= 2 && c.a <= c.b;
  return c;
}

// K(centroid) * area of the intersection of the grid cell [x0,x0+h]x[y0,y0+h]
// with the polygon, via half-plane clipping.
double clipped_cell_term(const Polygon& p, const Kernel& k, double x0, double y0, double h,
                         Vec2 x) {
  std::vector<Vec2> poly = {{x0, y0}, {x0 + h, y0}, {x0 + h, y0 + h}, {x0, y0 + h}};
  std::vector<Vec2> next;
  size_t n = p.size();
  for (size_t i = 0; i < n && !poly.empty(); ++i) {
    Vec2 a = p.vertex(i);
    Vec2 e = p.vertex(i + 1) - a;
    next.clear();
    size_t m = poly.size();
    for (size_t j = 0; j < m; ++j) {
      Vec2 P = poly[j], Q = poly[(j + 1) % m];
      double sp = cross(e, P - a), sq = cross(e, Q - a);
      if (sp >= 0.0) next.push_back(P);
      if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
        double t = sp / (sp - sq);
        next.push_back(P + (Q - P) * t);
      }
    }
    poly = next;
  }
  if (poly.size() < 3) return 0.0;
  double area2 = 0.0;
  Vec2 c{0.0, 0.0};
  size_t m = poly.size();
  for (size_t j = 0; j < m; ++j) {
    Vec2 P = poly[j], Q = poly[(j + 1) % m];
    double w = cross(P, Q);
    area2 += w;
    c += (P + Q) * w;
  }
  if (area2 <= 1e-300) return 0.0;
  c = c / (3.0 * area2);
  return k(norm(c - x)) * 0.5 * area2;
}

double segment_distance(Vec2 x, Vec2 a, Vec2 b) {
  Vec2 t = b - a;
  double len2 = dot(t, t);
  double u = len2 > 0.0 ? std::clamp(dot(x - a, t) / len2, 0.0, 1.0) : 0.0;
  return norm(x - (a + t * u));
}

// Panel edges on [0, len] packed geometrically around s0 so that Gauss panels
// stay accurate where the integrand varies on scale d.
std::vector<double> graded_breaks(double len, double s0, double d) {
  std::vector<double> bp = {0.0, len};
  if (s0 > 0.0 && s0 < len) bp.push_back(s0);
  for (double w = d; w < 2.0 * len; w *= 2.0) {
    if (s0 - w > 0.0) bp.push_back(s0 - w);
    if (s0 + w < len) bp.push_back(s0 + w);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [len](double a, double b) { return b - a < 1e-13 * len; }),
           bp.end());
  bp.back() = len;
  return bp;
}

// Panel edges graded into one end of [0, len]: end 0 grades toward 0, end 1
// toward len, anything else is a uniform split.
std::vector<double> corner_breaks(double len, int end) {
  std::vector<double> bp;
  if (end != 0 && end != 1) {
    for (int i = 0; i <= 12; ++i) bp.push_back(len * i / 12.0);
    return bp;
  }
  bp.push_back(0.0);
  for (int kk = 26; kk >= 1; --kk) bp.push_back(len * std::ldexp(1.0, -kk));
  bp.push_back(len);
  if (end == 1)
    for (auto& s : bp) s = len - s;
  std::sort(bp.begin(), bp.end());
  return bp;
}

}  // namespace

double grid_potential(const Polygon& p, const Kernel& k, Vec2 x) {
  if (!p.convex()) throw std::logic_error("grid_potential needs a convex polygon");
  const double h = 1e-3;
  const int m = 50;
  const double W = (m + 0.5) * h;

  size_t n = p.size();
  double clearance = kInf;
  double ymin = kInf, ymax = -kInf;
  for (size_t i = 0; i < n; ++i) {
    Vec2 v = p.vertex(i);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
    clearance = std::min(clearance, segment_distance(x, v, p.vertex(i + 1)));
  }
  if (clearance < W * std::numbers::sqrt2 + 2.0 * h)
    throw std::logic_error("grid_potential needs the point further inside");

  // Central block, exactly: int over [-W,W]^2 of K(|z|) collapses to the
  // radial primitive along the square's polar radius.
  double block = 8.0 * gauss_panel(
                           [&](double th) { return k.radial_primitive(W / std::cos(th)); }, 0.0,
                           std::numbers::pi / 4.0, 64);

  int j0 = static_cast<int>(std::floor((ymin - x.y) / h)) - 2;
  int j1 = static_cast<int>(std::ceil((ymax - x.y) / h)) + 2;
  double inside = 0.0, edge = 0.0;
  for (int j = j0; j <= j1; ++j) {
    double ylo = x.y + (j - 0.5) * h, yhi = ylo + h;
    Chord lo = chord_at(p, ylo);
    Chord hi = chord_at(p, yhi);
    double exA = kInf, exB = -kInf;
    if (lo.ok) { exA = lo.a; exB = lo.b; }
    if (hi.ok) { exA = std::min(exA, hi.a); exB = std::max(exB, hi.b); }
    for (size_t s = 0; s < n; ++s) {
      Vec2 v = p.vertex(s);
      if (v.y >= ylo && v.y <= yhi) {
        exA = std::min(exA, v.x);
        exB = std::max(exB, v.x);
      }
    }
    if (exA > exB) continue;
    double inA = kInf, inB = -kInf;
    if (lo.ok && hi.ok) {
      inA = std::max(lo.a, hi.a);
      inB = std::min(lo.b, hi.b);
    }
    int ia = static_cast<int>(std::floor((exA - x.x) / h - 0.5));
    int ib = static_cast<int>(std::ceil((exB - x.x) / h + 0.5));
    for (int i = ia; i <= ib; ++i) {
      if (std::abs(i) <= m && std::abs(j) <= m) continue;
      double xl = x.x + (i - 0.5) * h;
      if (xl >= inA && xl + h <= inB) {
        inside += k(h * std::hypot(static_cast<double>(i), static_cast<double>(j)));
      } else {
        edge += clipped_cell_term(p, k, xl, ylo, h, x);
      }
    }
  }
  return block + inside * h * h + edge;
}

double boundary_potential(const Polygon& p, const Kernel& k, Vec2 x) {
  double total = 0.0;
  for (const auto& s : side_data(p)) {
    double proj = std::clamp(dot(x - s.a, s.tangent), 0.0, s.length);
    double d = std::max(norm(x - (s.a + s.tangent * proj)), 1e-9 * s.length);
    std::vector<double> bp = graded_breaks(s.length, proj, d);
    for (size_t i = 0; i + 1 < bp.size(); ++i) {
      total += gauss_panel(
          [&](double u) {
            Vec2 r = s.a + s.tangent * u - x;
            double rr = norm(r);
            return k.radial_primitive(rr) / (rr * rr) * dot(r, s.normal);
          },
          bp[i], bp[i + 1], 20);
    }
  }
  return total;
}

double pair_energy(const Polygon& p, double alpha) {
  // Writing K(|x-y|) = Lap Phi(|x-y|) with Phi(r) = r^(2-alpha)/(2-alpha)^2
  // and applying the divergence theorem in x and then y turns the double area
  // integral into a double boundary integral weighted by the normals.
  auto sides = side_data(p);
  size_t n = sides.size();
  double c2 = (2.0 - alpha) * (2.0 - alpha);
  auto phi = [&](double r) { return std::pow(r, 2.0 - alpha) / c2; };

  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double l = sides[i].length;
    total -= 2.0 * std::pow(l, 4.0 - alpha) / c2 * (1.0 / (3.0 - alpha) - 1.0 / (4.0 - alpha));
  }
  const auto& rule = polyriesz::gauss_legendre(12);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      double dn = dot(sides[i].normal, sides[j].normal);
      if (std::abs(dn) < 1e-15) continue;
      int end_i = -1, end_j = -1;
      if (j == i + 1) { end_i = 1; end_j = 0; }
      if (i == 0 && j == n - 1) { end_i = 0; end_j = 1; }
      std::vector<double> bi = corner_breaks(sides[i].length, end_i);
      std::vector<double> bj = corner_breaks(sides[j].length, end_j);
      double block = 0.0;
      for (size_t a = 0; a + 1 < bi.size(); ++a) {
        double ma = 0.5 * (bi[a] + bi[a + 1]), ha = 0.5 * (bi[a + 1] - bi[a]);
        for (size_t b = 0; b + 1 < bj.size(); ++b) {
          double mb = 0.5 * (bj[b] + bj[b + 1]), hb = 0.5 * (bj[b + 1] - bj[b]);
          double acc = 0.0;
          for (size_t u = 0; u < rule.nodes.size(); ++u) {
            Vec2 xs = sides[i].a + sides[i].tangent * (ma + ha * rule.nodes[u]);
            for (size_t v = 0; v < rule.nodes.size(); ++v) {
              Vec2 yt = sides[j].a + sides[j].tangent * (mb + hb * rule.nodes[v]);
              acc += rule.weights[u] * rule.weights[v] * phi(norm(xs - yt));
            }
          }
          block += acc * ha * hb;
        }
      }
      total -= 2.0 * dn * block;
    }
  }
  return total;
}

static double urand(std::mt19937_64& gen, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(gen);
}

Polygon random_triangle(std::mt19937_64& gen, double area) {
  for (;;) {
    Vec2 a{urand(gen, -1, 1), urand(gen, -1, 1)};
    Vec2 b{urand(gen, -1, 1), urand(gen, -1, 1)};
    Vec2 c{urand(gen, -1, 1), urand(gen, -1, 1)};
    double s = 0.5 * cross(b - a, c - a);
    if (std::abs(s) < 0.15) continue;
    if (s < 0) std::swap(b, c);
    Polygon t({a, b, c});
    double amin = kInf;
    for (size_t i = 0; i < 3; ++i) amin = std::min(amin, interior_angle(t, i));
    if (amin < 0.35) continue;
    return t.scaled(std::sqrt(area / t.area()), t.centroid());
  }
}

Polygon random_convex(std::mt19937_64& gen, int n, double area) {
  for (;;) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) {
      double th = 2.0 * std::numbers::pi * (i + 0.35 * urand(gen, -1, 1)) / n;
      double r = urand(gen, 0.75, 1.3);
      pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
    try {
      Polygon q(pts);
      if (!q.convex()) continue;
      bool ok = true;
      for (int i = 0; i < n; ++i) {
        double ang = interior_angle(q, i);
        if (ang < 0.3 || ang > std::numbers::pi - 0.3) ok = false;
      }
      if (!ok) continue;
      return q.scaled(std::sqrt(area / q.area()), q.centroid());
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
}

Polygon random_rectangle(std::mt19937_64& gen) {
  double r = urand(gen, 1.4, 3.0);
  double w = std::sqrt(r), h = 1.0 / w;
  Polygon rect({{-0.5 * w, -0.5 * h},
                {0.5 * w, -0.5 * h},
                {0.5 * w, 0.5 * h},
                {-0.5 * w, 0.5 * h}});
  return rect.rotated(urand(gen, 0.0, 3.0), Vec2{})
      .translated({urand(gen, -0.3, 0.3), urand(gen, -0.3, 0.3)});
}

Polygon random_rhombus(std::mt19937_64& gen) {
  double ratio = urand(gen, 1.5, 3.0);
  double dp = std::sqrt(0.5 * ratio), dq = 0.5 / dp;
  Polygon rh({{dp, 0.0}, {0.0, dq}, {-dp, 0.0}, {0.0, -dq}});
  return rh.rotated(urand(gen, 0.0, 3.0), Vec2{})
      .translated({urand(gen, -0.3, 0.3), urand(gen, -0.3, 0.3)});
}

}  // namespace oracle
