#ifndef POLYRIESZ_SYMM_FLOW_HPP
#define POLYRIESZ_SYMM_FLOW_HPP

#include <vector>

#include "polyriesz/energy.hpp"
#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/parallel.hpp"
#include "polyriesz/quadrature.hpp"

namespace polyriesz {

// Scalar shadow of the triangle symmetrization run at unit area.  Entry 0
// is the given half-base of the starting right triangle (base 2*a0, height
// 1/a0); entry k >= 1 is the equal-side length after k symmetrizations.
// The sequence converges to 2/3^(1/4), the equilateral side.
std::vector<double> triangle_recursion(double a0, int n);

// Scalar shadow of the quadrilateral cycle at unit area.  Entry 0 is the
// side of the starting rhombus (necessarily >= 1); entry k is the rhombus
// side after k full side->diagonal cycles.  Converges to 1, the square.
std::vector<double> quadrilateral_recursion(double a, int n);

struct SymmetrizationStep {
  int step = 0;    // 1-based
  Vec2 direction;  // unit slicing direction used
  Polygon shape;   // area-normalized result
  Estimate energy;
};

struct SymmetrizationResult {
  Polygon initial;  // area-normalized input
  Estimate initial_energy;
  std::vector<SymmetrizationStep> steps;
};

// Repeated Steiner symmetrization of a triangle or quadrilateral, rescaled
// to unit area throughout.  Triangles symmetrize along side 0 first, then
// along the lowest-index side of the most nearly equal pair.  Quadrilaterals
// cycle kite -> rhombus -> rectangle -> rhombus: the axis diagonal for a
// kite, side 0 for a rhombus, the (0,2) diagonal for a rectangle, and an
// interior diagonal otherwise.
SymmetrizationResult symmetrization_run(const Polygon& p, const Kernel& k, int steps,
                                        const QuadratureSpec& q, const ExecPolicy& exec = {});

}  // namespace polyriesz

#endif
