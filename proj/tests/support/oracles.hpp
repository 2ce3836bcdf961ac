#pragma once

#include <random>

#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"

namespace oracle {

using polyriesz::Kernel;
using polyriesz::Polygon;
using polyriesz::Vec2;

// Reference potential from a midpoint sum on a 1e-3 grid snapped so that x
// sits at a cell center.  The singular block around x is replaced by a closed
// form (plain Riesz) or kept in the sweep (bounded kernels).  Boundary cells
// are clipped exactly and integrated at their centroid.  Convex polygons
// only; x must stay a safe distance inside (the central block has half-width
// 0.0505).  Accurate to a few 1e-6 relative.
double grid_potential(const Polygon& p, const Kernel& k, Vec2 x);

// Reference potential from the single-layer identity
//   v(x) = sum over sides of the flux of M(r)/r^2 * (y - x),
// integrated with Gauss panels graded toward the projection of x onto each
// side.  Interior x, any simple polygon.  Near machine precision.
double boundary_potential(const Polygon& p, const Kernel& k, Vec2 x);

// Reference energy for the plain Riesz kernel from the double boundary
// integral of Phi(r) = r^(2-alpha)/(2-alpha)^2 against the product of side
// normals.  Same-side blocks are closed form, shared-corner blocks use
// tensor panels graded into the corner.  Any simple polygon.
double pair_energy(const Polygon& p, double alpha);

// Shape generators used across the tests.  All draw from the passed engine
// only, so a fixed seed pins the whole sequence.
Polygon random_triangle(std::mt19937_64& gen, double area = 1.0);
Polygon random_convex(std::mt19937_64& gen, int n, double area = 1.0);
Polygon random_rectangle(std::mt19937_64& gen);
Polygon random_rhombus(std::mt19937_64& gen);

}  // namespace oracle
