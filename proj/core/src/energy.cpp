#include "polyriesz/energy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <list>

#include "polyriesz/potential.hpp"

namespace polyriesz {

std::vector<Triangle> triangulate(const Polygon& p) {
  std::vector<Triangle> out;
  if (p.convex()) {
    Vec2 c = p.centroid();
    for (int i = 0; i < p.size(); ++i)
      out.push_back({c, p.vertex(i), p.vertex(i + 1)});
    return out;
  }
  // Ear clipping.
  std::list<Vec2> ring(p.vertices().begin(), p.vertices().end());
  auto is_ear = [&](std::list<Vec2>::iterator it) {
    auto prev = it == ring.begin() ? std::prev(ring.end()) : std::prev(it);
    auto next = std::next(it) == ring.end() ? ring.begin() : std::next(it);
    Vec2 a = *prev, b = *it, c = *next;
    if (cross(b - a, c - b) <= 0.0) return false;
    for (auto jt = ring.begin(); jt != ring.end(); ++jt) {
      if (jt == prev || jt == it || jt == next) continue;
      Vec2 q = *jt;
      double d0 = cross(b - a, q - a);
      double d1 = cross(c - b, q - b);
      double d2 = cross(a - c, q - c);
      if (d0 >= 0.0 && d1 >= 0.0 && d2 >= 0.0) return false;
    }
    return true;
  };
  auto it = ring.begin();
  int guard = 0;
  while (ring.size() > 3) {
    if (++guard > 10000) throw std::invalid_argument("triangulation failed");
    if (is_ear(it)) {
      auto prev = it == ring.begin() ? std::prev(ring.end()) : std::prev(it);
      auto next = std::next(it) == ring.end() ? ring.begin() : std::next(it);
      out.push_back({*prev, *it, *next});
      it = ring.erase(it);
      if (it == ring.end()) it = ring.begin();
    } else {
      ++it;
      if (it == ring.end()) it = ring.begin();
    }
  }
  auto a = ring.begin();
  auto b = std::next(a);
  auto c = std::next(b);
  out.push_back({*a, *b, *c});
  return out;
}

namespace {

// A refinement node: the triangle's own rule value together with the rule
// values of its four quadrisection children.  diff measures how much the
// children disagree with the parent and drives the refinement order.
struct Region {
  Triangle tri;
  int depth = 0;  // children sit at depth + 1
  double fine = 0.0;
  double diff = 0.0;
  double verr = 0.0;  // inner potential noise over the children
  std::array<Triangle, 4> child;
  std::array<double, 4> child_value{};
};

std::array<Triangle, 4> quadrisect(const Triangle& t) {
  Vec2 ab = (t.a + t.b) * 0.5, bc = (t.b + t.c) * 0.5, ca = (t.c + t.a) * 0.5;
  return {Triangle{t.a, ab, ca}, Triangle{ab, t.b, bc}, Triangle{ca, bc, t.c},
          Triangle{ab, bc, ca}};
}

// Rule value of v_P over one triangle.
std::pair<double, double> cell_rule(const Polygon& p, const Kernel& k, const Triangle& t,
                                    const QuadratureSpec& q) {
  auto pts = triangle_rule(t.a.x, t.a.y, t.b.x, t.b.y, t.c.x, t.c.y, q.outer_triangle_order);
  double acc = 0.0, err = 0.0;
  for (const auto& pt : pts) {
    Estimate v = potential_at(p, k, {pt.x, pt.y}, q);
    acc += pt.w * v.value;
    err += std::abs(pt.w) * v.error;
  }
  return {acc, err};
}

}  // namespace

Estimate energy(const Polygon& p, const Kernel& k, const QuadratureSpec& q,
                const ExecPolicy& exec) {
  q.validate();
  std::vector<Triangle> tris = triangulate(p);

  // Evaluates the four children of each listed triangle in one deterministic
  // batch; `coarse` carries the triangles' own rule values.
  auto build_regions = [&](const std::vector<Triangle>& ts, const std::vector<double>& coarse,
                           const std::vector<int>& depths) {
    std::vector<Region> out(ts.size());
    for (size_t i = 0; i < ts.size(); ++i) {
      out[i].tri = ts[i];
      out[i].depth = depths[i];
      out[i].child = quadrisect(ts[i]);
    }
    auto vals = parallel_map(4 * ts.size(), exec.threads, [&](size_t j) {
      return cell_rule(p, k, out[j / 4].child[j % 4], q);
    });
    for (size_t i = 0; i < ts.size(); ++i) {
      double fine = 0.0, verr = 0.0;
      for (int j = 0; j < 4; ++j) {
        out[i].child_value[j] = vals[4 * i + j].first;
        fine += vals[4 * i + j].first;
        verr += vals[4 * i + j].second;
      }
      out[i].fine = fine;
      out[i].verr = verr;
      out[i].diff = std::abs(fine - coarse[i]);
    }
    return out;
  };

  std::vector<double> root_coarse(tris.size());
  {
    auto vals = parallel_map(tris.size(), exec.threads,
                             [&](size_t i) { return cell_rule(p, k, tris[i], q); });
    for (size_t i = 0; i < tris.size(); ++i) root_coarse[i] = vals[i].first;
  }
  double rough = 0.0;
  for (double c : root_coarse) rough += c;
  double tol_abs = q.tolerance * std::max(std::abs(rough), 1e-300);

  std::vector<Region> regions =
      build_regions(tris, root_coarse, std::vector<int>(tris.size(), 0));

  // Worst-first refinement: split the regions whose parent/child disagreement
  // dominates until the summed disagreement fits the budget.  Decisions
  // depend only on computed values, so the result is thread-count
  // independent.
  const int cap = q.max_subdivision_depth;
  const size_t region_budget = 32768;
  bool converged = true;
  while (true) {
    double sum_diff = 0.0, sum_verr = 0.0, worst = 0.0;
    for (const Region& r : regions) {
      sum_diff += r.diff;
      sum_verr += r.verr;
      if (r.depth + 2 <= cap) worst = std::max(worst, r.diff);
    }
    if (sum_diff <= std::max(tol_abs, 3.0 * sum_verr)) break;
    if (worst == 0.0 || regions.size() >= region_budget) {
      converged = false;
      break;
    }
    double cut = 0.25 * worst;
    std::vector<Region> keep;
    std::vector<Triangle> ts;
    std::vector<double> coarse;
    std::vector<int> depths;
    for (Region& r : regions) {
      if (r.depth + 2 <= cap && r.diff >= cut) {
        for (int j = 0; j < 4; ++j) {
          ts.push_back(r.child[j]);
          coarse.push_back(r.child_value[j]);
          depths.push_back(r.depth + 1);
        }
      } else {
        keep.push_back(r);
      }
    }
    std::vector<Region> born = build_regions(ts, coarse, depths);
    keep.insert(keep.end(), born.begin(), born.end());
    regions = std::move(keep);
  }

  Estimate total;
  for (const Region& r : regions) {
    total.value += r.fine;
    total.error += r.diff + r.verr;
  }
  if (!converged && total.error > 100.0 * tol_abs)
    throw AccuracyError("energy quadrature did not converge", total.value, total.error);
  return total;
}

Estimate energy_ratio_to_regular(const Polygon& p, const Kernel& k, const QuadratureSpec& q,
                                 const ExecPolicy& exec) {
  Estimate e = energy(p, k, q, exec);
  Estimate reg = energy(Polygon::regular_ngon(p.size(), p.area()), k, q, exec);
  double r = e.value / reg.value;
  double err = (e.error + std::abs(r) * reg.error) / std::abs(reg.value);
  return {r, err};
}

}  // namespace polyriesz
