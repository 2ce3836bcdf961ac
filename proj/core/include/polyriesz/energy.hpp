#ifndef POLYRIESZ_ENERGY_HPP
#define POLYRIESZ_ENERGY_HPP

#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/parallel.hpp"
#include "polyriesz/quadrature.hpp"

namespace polyriesz {

// E(P) = int_P int_P K(|x-y|) dy dx, evaluated as int_P v_P.  The outer
// integral triangulates P (centroid fan when convex, ear clipping
// otherwise) and refines by quadrisection; refinement decisions depend only
// on computed values and the reduction order is fixed, so results are
// bitwise independent of the thread count.
Estimate energy(const Polygon& p, const Kernel& k, const QuadratureSpec& q,
                const ExecPolicy& exec = {});

// E(P) / E(regular n-gon of the same area).  Strictly below 1 for
// non-regular P.
Estimate energy_ratio_to_regular(const Polygon& p, const Kernel& k, const QuadratureSpec& q,
                                 const ExecPolicy& exec = {});

// Triangulation helper shared with the outer quadrature (exposed for tests).
struct Triangle {
  Vec2 a, b, c;
};
std::vector<Triangle> triangulate(const Polygon& p);

}  // namespace polyriesz

#endif
