#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyriesz/geometry.hpp"
#include "polyriesz/kernel.hpp"
#include "polyriesz/potential.hpp"
#include "polyriesz/quadrature.hpp"

using namespace polyriesz;

namespace {

const QuadratureSpec kDefault{};

Polygon unit_square() {
  return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

// Interior point with the given clearance from the boundary, found by
// shrinking jitter toward the centroid.
Vec2 deep_point(const Polygon& p, std::mt19937_64& gen, double clearance) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Vec2 x = p.centroid() + Vec2{0.35 * u(gen), 0.35 * u(gen)};
    double d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p.size(); ++i) {
      Vec2 a = p.vertex(i), t = p.vertex(i + 1) - a;
      double s = std::clamp(dot(x - a, t) / norm2(t), 0.0, 1.0);
      d = std::min(d, norm(x - (a + t * s)));
    }
    if (d >= clearance) return x;
  }
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("center of the unit square, alpha 1") {
  const double golden = 3.5254943480781721;
  CHECK(std::abs(golden - 4.0 * std::log(1.0 + std::sqrt(2.0))) < 1e-15);

  Estimate v = potential_at(unit_square(), Kernel::riesz(1.0), {0.5, 0.5}, kDefault);
  CHECK(std::abs(v.value - golden) <= std::max(3.0 * v.error, 1e-10));
  CHECK(v.error < 1e-6);
  CHECK(v.error > 0.0);
}

TEST_CASE("boundary and exterior points agree with the flux oracle") {
  Polygon p = unit_square();
  Kernel k = Kernel::riesz(1.0);
  for (Vec2 x : {Vec2{0.5, 0.0}, Vec2{0.0, 0.0}, Vec2{1.0, 0.37}}) {
    Estimate v = potential_at(p, k, x, kDefault);
    double ref = oracle::boundary_potential(p, k, x);
    CHECK(std::abs(v.value - ref) <= std::max(3.0 * v.error, 1e-7 * std::abs(ref)));
  }
  // Exterior: the signed fan still integrates K over the polygon.
  for (Vec2 x : {Vec2{2.0, 0.5}, Vec2{-0.7, 1.9}}) {
    Estimate v = potential_at(p, k, x, kDefault);
    double ref = oracle::boundary_potential(p, k, x);
    CHECK(std::abs(v.value - ref) <= std::max(3.0 * v.error, 1e-7 * std::abs(ref)));
    CHECK(v.value > 0.0);
  }
}

TEST_CASE("grid oracle agreement across kernels") {
  std::mt19937_64 gen(71);
  Kernel kernels[3] = {Kernel::riesz(0.5), Kernel::riesz(1.5),
                       Kernel::regularized_riesz(1.0, 0.05)};
  for (int c = 0; c < 3; ++c) {
    Polygon p = oracle::random_convex(gen, 3 + c);
    Vec2 x = deep_point(p, gen, 0.18);
    Estimate v = potential_at(p, kernels[c], x, kDefault);
    double ref = oracle::grid_potential(p, kernels[c], x);
    CHECK(std::abs(v.value - ref) <= 1e-5 * std::abs(ref));
  }
}

TEST_CASE("potential scales like the kernel degree") {
  std::mt19937_64 gen(72);
  Polygon p = oracle::random_convex(gen, 5);
  Vec2 x = deep_point(p, gen, 0.1);
  for (double alpha : {0.5, 1.0, 1.5}) {
    Kernel k = Kernel::riesz(alpha);
    double lam = 1.7;
    Estimate base = potential_at(p, k, x, kDefault);
    Estimate big = potential_at(p.scaled(lam), k, x * lam, kDefault);
    double factor = std::pow(lam, 2.0 - alpha);
    CHECK(std::abs(big.value - factor * base.value) <=
          std::max(1e-7 * std::abs(big.value), 3.0 * (big.error + factor * base.error)));
  }
}

TEST_CASE("potential is bounded by the near-far split") {
  Polygon p = unit_square();
  for (double alpha : {0.5, 1.0, 1.5}) {
    Kernel k = Kernel::riesz(alpha);
    double bound = 2.0 * std::numbers::pi * k.radial_primitive(1.0) + k(1.0) * p.area();
    for (Vec2 x : {Vec2{0.5, 0.5}, Vec2{0.0, 0.0}, Vec2{0.25, 0.75}}) {
      Estimate v = potential_at(p, k, x, kDefault);
      CHECK(v.value <= bound + 3.0 * v.error);
      CHECK(v.value > 0.0);
    }
  }
}

TEST_CASE("side integrals are mutually consistent") {
  std::mt19937_64 gen(73);
  Polygon p = oracle::random_convex(gen, 4);
  Kernel k = Kernel::riesz(1.0);
  for (int side = 0; side < 4; ++side) {
    SideIntegrals si = side_integrals(p, k, side, kDefault);
    double len = side_data(p, side).length;

    Estimate mean = side_mean_potential(p, k, side, kDefault);
    CHECK(std::abs(mean.value * len - si.integral_v.value) <=
          3.0 * (mean.error * len + si.integral_v.error));

    Estimate h1 = side_half_moment(p, k, side, SideHalf::First, kDefault);
    Estimate h2 = side_half_moment(p, k, side, SideHalf::Second, kDefault);
    CHECK(std::abs(h1.value - si.half_moment_first.value) <=
          3.0 * (h1.error + si.half_moment_first.error) + 1e-14);
    CHECK(std::abs(h2.value - si.half_moment_second.value) <=
          3.0 * (h2.error + si.half_moment_second.error) + 1e-14);

    // |x - P_i| + |x - P_{i+1}| = len on the side, so the two vertex
    // moments must add up to len times the potential integral.
    Estimate ms = side_vertex_moment(p, k, side, SideAnchor::Start, kDefault);
    Estimate me = side_vertex_moment(p, k, side, SideAnchor::End, kDefault);
    CHECK(std::abs(ms.value + me.value - len * si.integral_v.value) <=
          3.0 * (ms.error + me.error + len * si.integral_v.error) + 1e-12);
  }
}

TEST_CASE("half moments match on a symmetric side") {
  Polygon p = unit_square();
  Kernel k = Kernel::riesz(1.0);
  Estimate h1 = side_half_moment(p, k, 0, SideHalf::First, kDefault);
  Estimate h2 = side_half_moment(p, k, 0, SideHalf::Second, kDefault);
  CHECK(std::abs(h1.value - h2.value) <= 3.0 * (h1.error + h2.error) + 1e-12);
  CHECK(h1.value > 0.0);
}

TEST_CASE("potential against the single layer oracle, regularized") {
  Polygon p = Polygon::regular_ngon(5, 1.0);
  Kernel k = Kernel::regularized_riesz(0.8, 0.05);
  Vec2 x{0.11, -0.07};
  Estimate v = potential_at(p, k, x, kDefault);
  double ref = oracle::boundary_potential(p, k, x);
  CHECK(std::abs(v.value - ref) <= std::max(3.0 * v.error, 1e-7 * std::abs(ref)));
}

}  // TEST_SUITE
