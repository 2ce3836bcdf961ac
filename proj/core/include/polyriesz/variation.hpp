#ifndef POLYRIESZ_VARIATION_HPP
#define POLYRIESZ_VARIATION_HPP

#include <utility>
#include <vector>

#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/parallel.hpp"
#include "polyriesz/quadrature.hpp"
#include "polyriesz/stationarity.hpp"

namespace polyriesz {

// One-parameter boundary perturbations.
//   Sliding:       side `index` translates outward, adjacent sides extend.
//   Tilting:       side `index` rotates about its midpoint, endpoints ride
//                  the adjacent side lines (area preserving).
//   DiagonalVertex: vertex `index` moves along P_{i-1} -> P_{i+1} (area
//                  preserving, vertex must be convex).
//   QuadTwoSided:  quadrilaterals only; in the frame where the diagonal
//                  from vertex `diagonal` lies on the x-axis (that vertex on
//                  the negative side), the off-diagonal vertices shear
//                  horizontally with rates beta_plus (upper) and beta_minus
//                  (lower).  Area preserving.
struct FlowSpec {
  enum class Family { Sliding, Tilting, DiagonalVertex, QuadTwoSided };
  Family family = Family::Sliding;
  int index = 0;     // side for Sliding/Tilting, vertex for DiagonalVertex
  int diagonal = 0;  // QuadTwoSided: vertex placed on the negative axis
  double beta_plus = 0.0;
  double beta_minus = 0.0;
  Constraint constraint = Constraint::None;
};

// Vertex positions after running the (unconstrained) flow to parameter t.
// Throws std::range_error when the result degenerates.
Polygon apply_flow(const Polygon& p, const FlowSpec& spec, double t);

// Half of the first degeneracy parameter: both +t and -t are safe below
// the returned value.
double max_flow_parameter(const Polygon& p, const FlowSpec& spec);

// Scales `moved` about the origin so its area (or perimeter) matches `ref`.
Polygon rescale_constraint(const Polygon& ref, const Polygon& moved, Constraint c);

// dE/dt at t=0 of the constraint-rescaled flow, by Richardson-extrapolated
// central differences over steps h and h/2.  The error bound combines the
// propagated quadrature bounds with a truncation estimate.
Estimate fd_first_variation(const Polygon& p, const Kernel& k, const FlowSpec& spec, double h,
                            const QuadratureSpec& q, const ExecPolicy& exec = {});

// Closed-form dE/dt at t=0 (boundary integrals of v), including the
// constraint correction -(sigma/|P|) dA or -(2 sigma/Per) dPer.
Estimate analytic_first_variation(const Polygon& p, const Kernel& k, const FlowSpec& spec,
                                  const QuadratureSpec& q);

struct GeometryDerivatives {
  double d_area = 0.0;
  double d_perimeter = 0.0;
};
// Central differences of area and perimeter along the raw flow.
GeometryDerivatives fd_geometry_derivatives(const Polygon& p, const FlowSpec& spec, double h);
// The matching closed forms.
GeometryDerivatives analytic_geometry_derivatives(const Polygon& p, const FlowSpec& spec);

// dE under independent vertex displacements: component i is the gradient
// of E with respect to vertex i.  Second member is a shared error bound.
std::pair<std::vector<Vec2>, double> vertex_gradient(const Polygon& p, const Kernel& k,
                                                     const QuadratureSpec& q,
                                                     const ExecPolicy& exec = {});

// Slice-pair derivative bound for the shear flow, in the frame where the
// reference diagonal lies on the x-axis: lhs is the exact derivative of the
// pair interaction written as a rectangle integral of W', rhs the product
// lower bound.  Kernel must be the regularized kind.
struct SliceBound {
  double lhs = 0.0;
  double rhs = 0.0;
};
SliceBound slice_derivative_bound_check(const Polygon& p, const Kernel& k, double x2, double y2);

}  // namespace polyriesz

#endif
