#include "polyriesz/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "polyriesz/errors.hpp"
#include "polyriesz/variation.hpp"

namespace polyriesz {

namespace {

Polygon with_area(const Polygon& p, double area) {
  return p.scaled(std::sqrt(area / p.area()), p.centroid());
}

Polygon random_star(int n, double area, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uangle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> uradius(0.6, 1.4);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<double> angles(n);
    for (double& a : angles) a = uangle(rng);
    std::sort(angles.begin(), angles.end());
    double min_gap = 2.0 * std::numbers::pi;
    for (int i = 0; i < n; ++i) {
      double next = i + 1 < n ? angles[i + 1] : angles[0] + 2.0 * std::numbers::pi;
      min_gap = std::min(min_gap, next - angles[i]);
    }
    if (min_gap < 0.25 * (2.0 * std::numbers::pi / n)) continue;
    std::vector<Vec2> v(n);
    for (int i = 0; i < n; ++i) {
      double r = uradius(rng);
      v[i] = {r * std::cos(angles[i]), r * std::sin(angles[i])};
    }
    try {
      return with_area(Polygon(std::move(v)), area);
    } catch (const UnsupportedInput&) {
      continue;
    }
  }
  throw OptimizationError("could not draw a valid starting polygon");
}

std::vector<Vec2> area_gradient(const Polygon& p) {
  int n = p.size();
  std::vector<Vec2> g(n);
  for (int i = 0; i < n; ++i) {
    Vec2 d = p.vertex(i + 1) - p.vertex(i - 1);
    g[i] = 0.5 * perp_cw(d);
  }
  return g;
}

double dot_all(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += dot(a[i], b[i]);
  return s;
}

std::optional<Polygon> try_polygon(const std::vector<Vec2>& v, double area) {
  try {
    return with_area(Polygon(v), area);
  } catch (const UnsupportedInput&) {
    return std::nullopt;
  }
}

struct RegularGauges {
  double side;
  double angle;
};

RegularGauges regular_gauges(int n, double area) {
  double side = std::sqrt(4.0 * area * std::tan(std::numbers::pi / n) / n);
  double angle = std::numbers::pi * (n - 2) / n;
  return {side, angle};
}

TraceRow make_row(int iter, const Polygon& p, const Estimate& e, double gnorm,
                  const RegularGauges& reg) {
  TraceRow row;
  row.iteration = iter;
  row.energy = e.value;
  row.error_bound = e.error;
  row.grad_norm = gnorm;
  for (int i = 0; i < p.size(); ++i) {
    row.max_side_dev = std::max(row.max_side_dev, std::abs(side_data(p, i).length - reg.side));
    row.max_angle_dev = std::max(row.max_angle_dev, std::abs(interior_angle(p, i) - reg.angle));
  }
  return row;
}

// Nelder-Mead polish on the flattened vertex coordinates; the objective
// rescales to the target area and returns the energy (invalid shapes score
// -inf).  Used when gradient steps stop paying off.
struct NelderMead {
  int n;
  double area;
  const Kernel& k;
  const QuadratureSpec& q;
  const ExecPolicy& exec;
  int evals = 0;
  int max_evals = 240;

  double objective(const std::vector<double>& x, std::optional<Polygon>& shape) {
    ++evals;
    std::vector<Vec2> v(n);
    for (int i = 0; i < n; ++i) v[i] = {x[2 * i], x[2 * i + 1]};
    shape = try_polygon(v, area);
    if (!shape) return -std::numeric_limits<double>::infinity();
    return energy(*shape, k, q, exec).value;
  }

  // Returns the best shape found, or nullopt when nothing valid improved.
  std::optional<Polygon> run(const Polygon& start, double scale, double spread_floor) {
    int dim = 2 * n;
    std::vector<std::vector<double>> xs(dim + 1, std::vector<double>(dim));
    for (int i = 0; i < n; ++i) {
      xs[0][2 * i] = start.vertex(i).x;
      xs[0][2 * i + 1] = start.vertex(i).y;
    }
    for (int j = 1; j <= dim; ++j) {
      xs[j] = xs[0];
      xs[j][j - 1] += 0.02 * scale;
    }
    std::vector<double> fs(dim + 1);
    std::vector<std::optional<Polygon>> shapes(dim + 1);
    for (int j = 0; j <= dim; ++j) fs[j] = objective(xs[j], shapes[j]);

    auto order = [&]() {
      std::vector<int> idx(dim + 1);
      for (int j = 0; j <= dim; ++j) idx[j] = j;
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] > fs[b]; });
      std::vector<std::vector<double>> nxs(dim + 1);
      std::vector<double> nfs(dim + 1);
      std::vector<std::optional<Polygon>> nsh(dim + 1);
      for (int j = 0; j <= dim; ++j) {
        nxs[j] = std::move(xs[idx[j]]);
        nfs[j] = fs[idx[j]];
        nsh[j] = std::move(shapes[idx[j]]);
      }
      xs = std::move(nxs);
      fs = std::move(nfs);
      shapes = std::move(nsh);
    };

    while (evals < max_evals) {
      order();
      if (std::isfinite(fs[dim]) && fs[0] - fs[dim] <= spread_floor) break;
      std::vector<double> centroid(dim, 0.0);
      for (int j = 0; j < dim; ++j) {
        for (int c = 0; c < dim; ++c) centroid[c] += xs[j][c] / dim;
      }
      auto blend = [&](double t) {
        std::vector<double> x(dim);
        for (int c = 0; c < dim; ++c) x[c] = centroid[c] + t * (xs[dim][c] - centroid[c]);
        return x;
      };
      std::optional<Polygon> sh;
      std::vector<double> xr = blend(-1.0);
      double fr = objective(xr, sh);
      if (fr > fs[0]) {
        std::optional<Polygon> sh2;
        std::vector<double> xe = blend(-2.0);
        double fe = objective(xe, sh2);
        if (fe > fr) {
          xs[dim] = std::move(xe); fs[dim] = fe; shapes[dim] = std::move(sh2);
        } else {
          xs[dim] = std::move(xr); fs[dim] = fr; shapes[dim] = std::move(sh);
        }
      } else if (fr > fs[dim - 1]) {
        xs[dim] = std::move(xr); fs[dim] = fr; shapes[dim] = std::move(sh);
      } else {
        std::vector<double> xc = blend(0.5);
        double fc = objective(xc, sh);
        if (fc > fs[dim]) {
          xs[dim] = std::move(xc); fs[dim] = fc; shapes[dim] = std::move(sh);
        } else {
          for (int j = 1; j <= dim; ++j) {
            for (int c = 0; c < dim; ++c) xs[j][c] = 0.5 * (xs[j][c] + xs[0][c]);
            fs[j] = objective(xs[j], shapes[j]);
            if (evals >= max_evals) break;
          }
        }
      }
    }
    order();
    return shapes[0];
  }
};

}  // namespace

OptimizeResult maximize_energy(int n, double area, const Kernel& k, const OptimizeOptions& opt,
                               const QuadratureSpec& q, const ExecPolicy& exec) {
  if (n < 3) throw UnsupportedInput("need at least 3 vertices");
  if (!(area > 0.0) || !std::isfinite(area)) throw UnsupportedInput("area must be positive");
  if (opt.max_iterations < 1) throw UnsupportedInput("need at least one iteration");
  if (opt.init && opt.init->size() != n) {
    throw UnsupportedInput("starting polygon has " + std::to_string(opt.init->size()) +
                           " vertices, expected " + std::to_string(n));
  }

  std::mt19937_64 rng(opt.seed);
  Polygon cur = opt.init ? with_area(*opt.init, area) : random_star(n, area, rng);
  Estimate cur_e = energy(cur, k, q, exec);
  const double scale = std::sqrt(area);
  const RegularGauges reg = regular_gauges(n, area);

  OptimizeResult result{cur, cur_e, 0, false, {}};
  double step = 0.0;
  int stall = 0;
  int accepted = 0;
  double last_gnorm = 0.0;
  constexpr double c1 = 1e-4;

  for (int iter = 1; iter <= opt.max_iterations; ++iter) {
    auto [grad, gerr] = vertex_gradient(cur, k, q, exec);
    std::vector<Vec2> ag = area_gradient(cur);
    double proj = dot_all(grad, ag) / dot_all(ag, ag);
    for (size_t i = 0; i < grad.size(); ++i) grad[i] -= proj * ag[i];
    double gnorm2 = dot_all(grad, grad);
    double gnorm = std::sqrt(gnorm2);
    last_gnorm = gnorm;
    result.trace.push_back(make_row(iter, cur, cur_e, gnorm, reg));
    result.iterations = iter;

    if (gnorm * scale <= opt.tolerance * std::max(std::abs(cur_e.value), 1e-300)) {
      result.converged = true;
      break;
    }

    if (step <= 0.0) step = 0.1 * scale / std::max(gnorm, 1e-300);
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<Vec2> v = cur.vertices();
      for (size_t i = 0; i < v.size(); ++i) v[i] += step * grad[i];
      std::optional<Polygon> cand = try_polygon(v, area);
      if (cand) {
        Estimate cand_e = energy(*cand, k, q, exec);
        if (cand_e.value >= cur_e.value + c1 * step * gnorm2) {
          double gain = (cand_e.value - cur_e.value) / std::max(std::abs(cur_e.value), 1e-300);
          cur = std::move(*cand);
          cur_e = cand_e;
          moved = true;
          ++accepted;
          step *= 1.5;
          stall = gain < opt.tolerance ? stall + 1 : 0;
          break;
        }
      }
      step *= 0.5;
    }
    if (!moved) ++stall;

    if (stall >= 5) {
      NelderMead nm{n, area, k, q, exec};
      std::optional<Polygon> polished = nm.run(cur, scale, 3.0 * cur_e.error);
      if (polished) {
        Estimate pe = energy(*polished, k, q, exec);
        if (pe.value > cur_e.value) {
          cur = std::move(*polished);
          cur_e = pe;
          ++accepted;
        }
      }
      result.converged = true;
      result.iterations = iter;
      break;
    }
  }

  if (accepted == 0 && !result.converged &&
      last_gnorm * scale > 1e-8 * std::max(std::abs(cur_e.value), 1e-300)) {
    throw OptimizationError("no admissible improving step from the starting shape");
  }

  result.shape = cur;
  result.energy = cur_e;
  return result;
}

StationarityReport stationarity_at_optimum(const OptimizeResult& r, const Kernel& k, Constraint c,
                                           double tolerance, const QuadratureSpec& q,
                                           const ExecPolicy& exec) {
  return check_stationarity(r.shape, k, c, tolerance, q, exec);
}

}  // namespace polyriesz
