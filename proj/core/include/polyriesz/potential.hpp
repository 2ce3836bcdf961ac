#ifndef POLYRIESZ_POTENTIAL_HPP
#define POLYRIESZ_POTENTIAL_HPP

#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/quadrature.hpp"

namespace polyriesz {

// v_P(x) = int_P K(|x-y|) dy for any x (inside, on, or outside P).
// Signed fan decomposition over the sides; the radial integral is the
// kernel's primitive M, so the singularity at y = x costs nothing.
Estimate potential_at(const Polygon& p, const Kernel& k, Vec2 x, const QuadratureSpec& q);

// Line integrals of v_P along side i, all from one adaptive pass per half
// side: integral of v, the two half-side moments |x - M_i|, and the two
// whole-side vertex moments.
struct SideIntegrals {
  Estimate integral_v;         // int_side v
  Estimate half_moment_first;  // int_{P_i -> M_i} v |x - M_i|
  Estimate half_moment_second; // int_{M_i -> P_{i+1}} v |x - M_i|
  Estimate moment_start;       // int_side v |x - P_i|
  Estimate moment_end;         // int_side v |x - P_{i+1}|
};
SideIntegrals side_integrals(const Polygon& p, const Kernel& k, int side,
                             const QuadratureSpec& q);

// (1/l_i) int_side v.
Estimate side_mean_potential(const Polygon& p, const Kernel& k, int side,
                             const QuadratureSpec& q);

enum class SideHalf { First, Second };
Estimate side_half_moment(const Polygon& p, const Kernel& k, int side, SideHalf half,
                          const QuadratureSpec& q);

enum class SideAnchor { Start, End };
Estimate side_vertex_moment(const Polygon& p, const Kernel& k, int side, SideAnchor anchor,
                            const QuadratureSpec& q);

}  // namespace polyriesz

#endif
