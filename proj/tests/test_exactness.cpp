#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "lagbound/errors.hpp"
#include "lagbound/exactness.hpp"
#include "oracles.hpp"

using namespace lagbound;

TEST_CASE("area functional on the cylinder is the integral of xi") {
  const Curve c = Curve::trig("c", fixtures::cylinder(), 0.1, {{0.2, 3, 0.0}}, 256);
  CHECK(area_functional(c) == doctest::Approx(0.1 * fixtures::kTwoPi).epsilon(1e-12));
}

TEST_CASE("area functional on the sphere") {
  // int_0^xi cos t dt = sin xi for constant xi
  const Curve c = Curve::constant("c", fixtures::sphere(), 0.3, 64);
  CHECK(area_functional(c) == doctest::Approx(fixtures::kTwoPi * std::sin(0.3)).epsilon(1e-11));
}

TEST_CASE("closed-form shift on the cylinder") {
  const Curve c = Curve::trig("c", fixtures::cylinder(), 0.07, {{0.1, 2, 0.3}}, 256);
  std::vector<double> v;
  for (int i = 0; i < c.size(); ++i) v.push_back(c.value(i));
  for (double a : {0.0, 0.25, 1.0}) CHECK(solve_c(c, a) == doctest::Approx(-a * oracle::mean(v)).epsilon(1e-11));
}

TEST_CASE("contraction invariants") {
  const Curve c = Curve::trig("c", fixtures::sphere(), 0.05, {{0.12, 2, 0.3}, {0.05, 5, 0.0}}, 256);
  const ContractionPath p = build_contraction(c, 41);
  const ContractionInvariants inv = check_invariants(p);
  CHECK(inv.c0_zero);
  CHECK(inv.c_bound);
  CHECK(inv.c_lipschitz);
  CHECK(inv.in_patch);
  CHECK(inv.max_root_residual <= 1e-12);
  const ContractionPath q = build_contraction(exactify(c), 11);
  CHECK(q.xi_exact);
  CHECK(check_invariants(q).all());
}

TEST_CASE("shift preconditions") {
  const Curve big = Curve::trig("c", fixtures::cylinder(), 0.0, {{0.6, 1, 0.0}}, 64);
  CHECK_THROWS_AS(solve_c(big, 1.0), InvalidInput);
  const Curve mid = Curve::trig("c", fixtures::cylinder(), 0.0, {{0.4, 1, 0.0}}, 64);
  CHECK_THROWS_AS(build_contraction(mid, 5), InvalidInput);
  CHECK(solve_c(mid, 0.0) == 0.0);
}

TEST_CASE("Liouville class and enclosed area") {
  for (double c0 : {-0.4, 0.0, 0.3}) {
    const Curve p = Curve::constant("p", fixtures::cylinder(), c0, 128);
    CHECK(isotopy_invariant(p, InvariantKind::liouville_class).value == doctest::Approx(fixtures::kTwoPi * c0).epsilon(1e-13));
  }
  auto plane = solve_warp(plane_circle_base(1.05), 0.5);
  for (double r : {0.8, 1.0, 1.3}) {
    const IsotopyInvariant inv = isotopy_invariant(Curve::constant("c", plane, 1.05 - r, 128), InvariantKind::enclosed_area);
    CHECK(inv.value == doctest::Approx(std::numbers::pi * r * r).epsilon(1e-12));
    CHECK(*inv.rho == doctest::Approx(inv.value / 2));
  }
  CHECK_THROWS_AS(isotopy_invariant(Curve::constant("p", fixtures::sphere(), 0.1, 64), InvariantKind::liouville_class),
                  InvalidInput);
}

TEST_CASE("shoelace against the oracle and self-intersection") {
  std::vector<Vec2> sq{{0, 0}, {2, 0}, {2, 1}, {0, 1}};
  std::vector<std::pair<double, double>> o;
  for (auto v : sq) o.push_back({v.x, v.y});
  CHECK(polygon_area(sq) == doctest::Approx(oracle::shoelace(o)));
  std::vector<Vec2> bow{{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_THROWS_AS(polygon_area(bow), SelfIntersection);
  auto plane = solve_warp(plane_circle_base(1.05), 0.5);
  const Curve c = Curve::trig("c", plane, 0.0, {{0.1, 4, 0.0}}, 512);
  std::vector<std::pair<double, double>> pts;
  for (auto v : plane_polygon(c)) pts.push_back({v.x, v.y});
  // polygon converges to the Green area at second order
  CHECK(oracle::shoelace(pts) == doctest::Approx(isotopy_invariant(c, InvariantKind::enclosed_area).value).epsilon(1e-4));
}

TEST_CASE("invariant kind names") {
  CHECK(invariant_kind_from_string("plane") == InvariantKind::enclosed_area);
  CHECK(invariant_kind_from_string(to_string(InvariantKind::liouville_class)) == InvariantKind::liouville_class);
  CHECK_THROWS_AS(invariant_kind_from_string("volume"), InvalidInput);
}
