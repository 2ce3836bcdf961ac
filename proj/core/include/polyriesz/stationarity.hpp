#ifndef POLYRIESZ_STATIONARITY_HPP
#define POLYRIESZ_STATIONARITY_HPP

#include <vector>

#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/parallel.hpp"
#include "polyriesz/potential.hpp"
#include "polyriesz/quadrature.hpp"

namespace polyriesz {

enum class Constraint { None, Area, Perimeter };

// sigma = int_{boundary} v_P(x) (x . nu) dH^1.  Lagrange multiplier scale of
// the constrained problems; translation invariant.
Estimate lagrange_sigma(const Polygon& p, const Kernel& k, const QuadratureSpec& q);

// Residual of the side-mean condition on side i.
//   Area:      (1/l_i) int_side v  -  sigma / (2|P|)
//   Perimeter: int_side v - (sigma/Per) (psi(theta_i) + psi(theta_{i+1}))
Estimate sliding_residual(const Polygon& p, const Kernel& k, int side, Constraint c,
                          const QuadratureSpec& q);

// Residual of the half-moment balance on side i.
//   Area:      int_{first half} v |x-M| - int_{second half} v |x-M|
//   Perimeter: the same difference minus (sigma l_i / (2 Per)) (psi_i - psi_{i+1})
Estimate tilting_residual(const Polygon& p, const Kernel& k, int side, Constraint c,
                          const QuadratureSpec& q);

// First variation of E under the unit-speed shift of vertex i along the
// diagonal P_{i-1} -> P_{i+1}.  Requires a convex vertex.
Estimate diagonal_first_variation(const Polygon& p, const Kernel& k, int vertex,
                                  const QuadratureSpec& q);

struct SideResult {
  int side = 0;
  Estimate mean;
  Estimate sliding_area;
  Estimate sliding_perimeter;
  Estimate tilting_area;
  Estimate tilting_perimeter;
};

struct VertexResult {
  int vertex = 0;
  bool convex = true;
  Estimate diagonal_variation;  // valid only when convex
};

struct StationarityReport {
  Constraint constraint = Constraint::Area;
  double tolerance = 0.0;
  Estimate sigma;
  std::vector<SideResult> sides;
  std::vector<VertexResult> vertices;
  std::vector<bool> sliding_ok;  // per side, for the requested constraint
  std::vector<bool> tilting_ok;
  bool stationary = false;

  // |residual| must not exceed max(tolerance, 3 * error bound).
  bool within(const Estimate& r) const {
    return std::abs(r.value) <= std::max(tolerance, 3.0 * r.error);
  }
};

StationarityReport check_stationarity(const Polygon& p, const Kernel& k, Constraint c,
                                      double tolerance, const QuadratureSpec& q,
                                      const ExecPolicy& exec = {});

}  // namespace polyriesz

#endif
