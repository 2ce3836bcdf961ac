#ifndef POLYRIESZ_OPTIMIZE_HPP
#define POLYRIESZ_OPTIMIZE_HPP

#include <optional>
#include <vector>

#include "polyriesz/energy.hpp"
#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/parallel.hpp"
#include "polyriesz/quadrature.hpp"
#include "polyriesz/stationarity.hpp"

namespace polyriesz {

struct OptimizeOptions {
  int max_iterations = 200;
  unsigned long long seed = 0;   // drives the random start when no init is given
  double tolerance = 1e-10;      // relative energy gain treated as converged
  std::optional<Polygon> init;   // optional starting shape (rescaled to `area`)
};

struct TraceRow {
  int iteration = 0;
  double energy = 0.0;
  double error_bound = 0.0;
  double grad_norm = 0.0;       // projected gradient, Euclidean over all vertices
  double max_side_dev = 0.0;    // against the regular n-gon of the same area
  double max_angle_dev = 0.0;
};

struct OptimizeResult {
  Polygon shape;
  Estimate energy;
  int iterations = 0;
  bool converged = false;
  std::vector<TraceRow> trace;
};

// Maximizes the interaction energy over simple n-gons of the given area by
// projected gradient ascent (area component removed, shape rescaled about
// its centroid every step) with Armijo backtracking.  Persistent stalls
// hand over to a Nelder-Mead polish.  Throws OptimizationError only when
// the gradient is substantial yet no admissible improving step exists.
OptimizeResult maximize_energy(int n, double area, const Kernel& k, const OptimizeOptions& opt,
                               const QuadratureSpec& q, const ExecPolicy& exec = {});

// Stationarity check of the optimized shape.
StationarityReport stationarity_at_optimum(const OptimizeResult& r, const Kernel& k, Constraint c,
                                           double tolerance, const QuadratureSpec& q,
                                           const ExecPolicy& exec = {});

}  // namespace polyriesz

#endif
