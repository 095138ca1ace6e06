// Randomised properties with hand-rolled generators and fixed seeds.
#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "lagbound/classifier.hpp"
#include "lagbound/exactness.hpp"
#include "lagbound/hausdorff.hpp"
#include "lagbound/sasaki.hpp"
#include "oracles.hpp"

using namespace lagbound;

namespace {

Curve random_curve(oracle::Gen& g, PatchPtr p, double norm, const std::string& id, int n = 256) {
  std::vector<TrigTerm> terms;
  const int k = g.integer(1, 3);
  double budget = norm;
  const double c0 = g.uniform(-0.3, 0.3) * budget;
  budget -= std::abs(c0);
  for (int i = 0; i < k; ++i) terms.push_back({g.uniform(-1, 1) * budget / k, g.integer(1, 6), g.uniform(0, 6.28)});
  return Curve::trig(id, p, c0, terms, n);
}

PatchPtr random_patch(oracle::Gen& g) {
  switch (g.integer(0, 3)) {
    case 0: return fixtures::cylinder();
    case 1: return fixtures::plane();
    case 2: return fixtures::sphere();
    default: return fixtures::hyperbolic();
  }
}

}  // namespace

TEST_CASE("Hausdorff distance is a metric on samples") {
  oracle::Gen g(11);
  for (int trial = 0; trial < 6; ++trial) {
    const PatchPtr p = trial % 2 ? fixtures::cylinder() : fixtures::sphere();
    const Curve a = random_curve(g, p, 0.3, "a"), b = random_curve(g, p, 0.3, "b"), c = random_curve(g, p, 0.3, "c");
    const HausdorffResult ab = hausdorff_distance(a, b), ba = hausdorff_distance(b, a);
    const HausdorffResult bc = hausdorff_distance(b, c), ac = hausdorff_distance(a, c);
    CHECK(std::abs(ab.value - ba.value) <= ab.error_bound + ba.error_bound);
    CHECK(ac.value <= ab.value + bc.value + ac.error_bound + ab.error_bound + bc.error_bound);
    CHECK(ab.value >= 0);
  }
}

TEST_CASE("shift is Lipschitz and bounded on random graphs") {
  oracle::Gen g(23);
  for (int trial = 0; trial < 8; ++trial) {
    const PatchPtr p = random_patch(g);
    const Curve xi = random_curve(g, p, 0.3, "x");
    const double n = xi.sup_abs();
    double prev_a = 0.0, prev_c = solve_c(xi, 0.0);
    CHECK(prev_c == 0.0);
    for (int i = 0; i < 6; ++i) {
      const double a = g.uniform(0, 1);
      const double c = solve_c(xi, a);
      CHECK(std::abs(c) <= a * n + 1e-12);
      CHECK(std::abs(c - prev_c) <= n * std::abs(a - prev_a) + 1e-12);
      CHECK(std::abs(area_functional(xi.affine(a, c, "y"))) <= 1e-12);
      prev_a = a;
      prev_c = c;
    }
  }
}

TEST_CASE("fibre norm grows quadratically from random states") {
  oracle::Gen g(5);
  const BaseManifold2D torus(BaseKind::flat_torus), sphere(BaseKind::round_sphere);
  for (int trial = 0; trial < 6; ++trial) {
    const BaseManifold2D& B = trial % 2 ? sphere : torus;
    Vec3d p(g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1));
    if (B.kind() == BaseKind::round_sphere) p.normalize();
    else p(2) = 0;
    const Vec2d v(g.uniform(-1, 1), g.uniform(-1, 1)), Y(g.uniform(-.3, .3), g.uniform(-.3, .3)),
        Z(g.uniform(-.3, .3), g.uniform(-.3, .3));
    const ParabolaFit f = parabola_check(B, sasaki_geodesic(B, make_state(B, p, v, Y, Z), 4.0, 0.005, 1e-6));
    CHECK(f.max_residual <= 1e-6);
    CHECK(f.c2 == doctest::Approx(Z.squaredNorm()).epsilon(1e-6).scale(1));
    CHECK(f.c1 == doctest::Approx(2 * Y.dot(Z)).epsilon(1e-6).scale(1));
  }
}

TEST_CASE("classify is monotone in k on random graphs") {
  oracle::Gen g(41);
  for (int trial = 0; trial < 4; ++trial) {
    const Curve c = random_curve(g, fixtures::wide_cylinder(), 0.6, "c", 128);
    const CurveInvariants inv = curve_invariants(c);
    bool seen_yes = false;
    for (double k = 0.25; k < 60; k *= 1.3) {
      const Tri v = classify(inv, k).verdict;
      if (seen_yes) CHECK(v == Tri::yes);
      seen_yes = seen_yes || v == Tri::yes;
    }
  }
}

TEST_CASE("curvature is invariant under parameter shift on the cylinder") {
  oracle::Gen g(77);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = g.uniform(0.05, 0.5), ph = g.uniform(0, 6.28);
    const int m = g.integer(1, 8);
    const Curve c1 = Curve::trig("a", fixtures::wide_cylinder(), 0.0, {{a, m, 0.0}}, 256);
    const Curve c2 = Curve::trig("b", fixtures::wide_cylinder(), 0.1, {{a, m, ph}}, 256);
    CHECK(geodesic_curvature(c1).sup_norm == doctest::Approx(geodesic_curvature(c2).sup_norm).epsilon(1e-9));
  }
}
