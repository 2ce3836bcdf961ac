#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "polyriesz/errors.hpp"
#include "polyriesz/potential.hpp"
#include "polyriesz/stationarity.hpp"

using namespace polyriesz;

namespace {

QuadratureSpec spec_with_tol(double tol) {
  QuadratureSpec q;
  q.tolerance = tol;
  return q;
}

Polygon centered_square() {
  return Polygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}});
}

}  // namespace

TEST_SUITE("stationarity") {

TEST_CASE("sigma reduces to a single side integral on the centered square") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-8);
  Polygon p = centered_square();
  Estimate sigma = lagrange_sigma(p, k, q);
  Estimate side = side_integrals(p, k, 0, q).integral_v;
  CHECK(std::abs(sigma.value - 2.0 * side.value) <= 3.0 * (sigma.error + 2.0 * side.error));
  CHECK(sigma.value > 0.0);
}

TEST_CASE("sigma is invariant under translation and rotation") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-7);
  std::mt19937_64 gen(51);
  Polygon p = oracle::random_triangle(gen);
  Estimate s0 = lagrange_sigma(p, k, q);
  Estimate s1 = lagrange_sigma(p.translated({1.9, -2.4}), k, q);
  Estimate s2 = lagrange_sigma(p.rotated(1.1, {0.3, 0.3}), k, q);
  CHECK(std::abs(s0.value - s1.value) <= 3.0 * (s0.error + s1.error));
  CHECK(std::abs(s0.value - s2.value) <= 3.0 * (s0.error + s2.error));
}

TEST_CASE("regular polygons are stationary under both constraints") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-8);
  for (int n : {3, 4, 5}) {
    Polygon p = Polygon::regular_ngon(n, 1.0);
    Estimate sigma = lagrange_sigma(p, k, q);
    double len = side_data(p, 0).length;
    Estimate mean = side_integrals(p, k, 0, q).integral_v * (1.0 / len);
    CHECK(std::abs(sigma.value - 2.0 * p.area() * mean.value) <=
          3.0 * (sigma.error + 2.0 * mean.error));
    for (Constraint c : {Constraint::Area, Constraint::Perimeter}) {
      StationarityReport rep = check_stationarity(p, k, c, 0.0, q);
      CHECK(rep.stationary);
      for (const auto& v : rep.vertices) {
        CHECK(v.convex);
        CHECK(std::abs(v.diagonal_variation.value) <= 3.0 * v.diagonal_variation.error);
      }
    }
  }
}

TEST_CASE("sliding residual differences equal mean differences") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-6);
  std::mt19937_64 gen(52);
  Polygon p = oracle::random_convex(gen, 4);
  StationarityReport rep = check_stationarity(p, k, Constraint::Area, 1e-6, q);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      double lhs = rep.sides[i].sliding_area.value - rep.sides[j].sliding_area.value;
      double rhs = rep.sides[i].mean.value - rep.sides[j].mean.value;
      CHECK(std::abs(lhs - rhs) <=
            1e-12 * (std::abs(rep.sides[i].mean.value) + std::abs(rep.sides[j].mean.value)));
    }
  }
}

TEST_CASE("every triangle passes the area sliding condition") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-8);
  std::mt19937_64 gen(53);
  for (int c = 0; c < 3; ++c) {
    Polygon t = oracle::random_triangle(gen);
    for (int side = 0; side < 3; ++side) {
      Estimate r = sliding_residual(t, k, side, Constraint::Area, q);
      CHECK(std::abs(r.value) <= 3.0 * r.error);
    }
  }
}

TEST_CASE("rectangles fail sliding differences but not tilting") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-8);
  Polygon r({{-1, -0.25}, {1, -0.25}, {1, 0.25}, {-1, 0.25}});
  StationarityReport rep = check_stationarity(r, k, Constraint::Area, 1e-7, q);
  CHECK_FALSE(rep.stationary);
  for (int i = 0; i < 4; ++i) CHECK(rep.tilting_ok[i]);

  // Opposite sides agree, adjacent sides differ.
  auto res = [&](int i) { return rep.sides[i].sliding_area; };
  CHECK(std::abs(res(0).value - res(2).value) <= 3.0 * (res(0).error + res(2).error));
  CHECK(std::abs(res(1).value - res(3).value) <= 3.0 * (res(1).error + res(3).error));
  CHECK(std::abs(res(0).value - res(1).value) >
        std::max(1e-7, 3.0 * (res(0).error + res(1).error)));
}

TEST_CASE("the flat rhombus fails exactly tilting") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-8);
  // Angles pi/3 and 2*pi/3.
  double p = std::sqrt(3.0) / 2.0, h = 0.5;
  Polygon rh = Polygon({{p, 0}, {0, h}, {-p, 0}, {0, -h}}).scaled(1.0 / std::sqrt(2.0 * p * h));
  StationarityReport rep = check_stationarity(rh, k, Constraint::Area, 1e-7, q);
  CHECK_FALSE(rep.stationary);
  bool tilting_failed = false;
  for (int i = 0; i < 4; ++i) {
    CHECK(rep.sliding_ok[i]);
    if (!rep.tilting_ok[i]) tilting_failed = true;
  }
  CHECK(tilting_failed);
}

TEST_CASE("tilting residual sign follows the angle order") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-8);
  // Side 0 runs between a small start angle and a larger end angle.
  Polygon t({{0, 0}, {1.8, 0}, {1.45, 0.8}});
  SideData s = side_data(t, 0);
  REQUIRE(s.angle_start < s.angle_end);
  Estimate r = tilting_residual(t, k, 0, Constraint::Area, q);
  CHECK(r.value < -3.0 * r.error);
}

TEST_CASE("diagonal variation vanishes once the adjacent sides are balanced") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-8);
  for (const Polygon& p : {centered_square(), Polygon::regular_ngon(5, 1.0)}) {
    Estimate sigma = lagrange_sigma(p, k, q);
    for (int v = 0; v < p.size(); ++v) {
      Estimate i_v = diagonal_first_variation(p, k, v, q);
      CHECK(std::abs(i_v.value) <= 3.0 * i_v.error);

      // Perimeter form of the same identity; the diagonal angles match on
      // these symmetric shapes, so the correction term is zero.
      SideData before = side_data(p, p.wrap(v - 1));
      SideData after = side_data(p, v);
      Vec2 diag = normalized(p.vertex(v + 1) - p.vertex(v - 1));
      double cos_minus = std::abs(dot(before.tangent, diag));
      double cos_plus = std::abs(dot(after.tangent, diag));
      double correction =
          2.0 * (sigma.value / p.perimeter()) * (cos_minus - cos_plus);
      CHECK(std::abs(i_v.value - correction) <= 3.0 * (i_v.error + sigma.error) + 1e-12);
    }
  }
}

TEST_CASE("concave vertices are refused by the diagonal variation") {
  Polygon l({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-4);
  CHECK_THROWS_AS(diagonal_first_variation(l, k, 3, q), UnsupportedInput);
  StationarityReport rep = check_stationarity(l, k, Constraint::Area, 1e-6, q);
  CHECK_FALSE(rep.vertices[3].convex);
}

TEST_CASE("a five percent perturbation of the square is not stationary") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-7);
  Polygon p({{-0.52, -0.47}, {0.5, -0.53}, {0.48, 0.5}, {-0.45, 0.52}});
  StationarityReport rep = check_stationarity(p, k, Constraint::Area, 1e-7, q);
  CHECK_FALSE(rep.stationary);
}

TEST_CASE("report bookkeeping") {
  Kernel k = Kernel::riesz(1.0);
  QuadratureSpec q = spec_with_tol(1e-5);
  Polygon p = centered_square();
  StationarityReport rep = check_stationarity(p, k, Constraint::Perimeter, 1e-6, q);
  CHECK(rep.constraint == Constraint::Perimeter);
  CHECK(rep.tolerance == 1e-6);
  CHECK(rep.sides.size() == 4);
  CHECK(rep.vertices.size() == 4);
  CHECK(rep.sliding_ok.size() == 4);
  CHECK(rep.within(Estimate{1e-7, 0.0}));
  CHECK(rep.within(Estimate{2e-6, 1e-6}));
  CHECK_FALSE(rep.within(Estimate{1e-4, 1e-6}));
}

}  // TEST_SUITE
