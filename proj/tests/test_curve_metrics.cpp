#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "lagbound/curve_metrics.hpp"
#include "lagbound/errors.hpp"
#include "oracles.hpp"

using namespace lagbound;

TEST_CASE("a m^2 on the flat cylinder") {
  for (double a : {0.1, 0.5})
    for (int m : {1, 3, 7}) {
      const Curve c = Curve::trig("c", fixtures::wide_cylinder(), 0.0, {{a, m, 0.0}}, 512);
      CHECK(geodesic_curvature(c).sup_norm == doctest::Approx(a * m * m).epsilon(1e-10));
    }
}

TEST_CASE("pointwise flat-cylinder curvature") {
  const Curve c = Curve::trig("c", fixtures::cylinder(), 0.1, {{0.3, 2, 0.4}, {0.1, 5, 0.0}}, 256);
  for (double s : {0.0, 0.37, 2.2, 5.9})
    CHECK(graph_curvature(c, s) == doctest::Approx(std::abs(oracle::flat_curvature(c.d1(s), c.d2(s)))).epsilon(1e-12));
}

TEST_CASE("plane patch curvature matches the Euclidean polar curve") {
  const double R = 2.0;
  const Curve c = Curve::trig("c", fixtures::plane(), 0.05, {{0.2, 3, 0.0}, {0.05, 1, 1.0}}, 256);
  for (double s : {0.0, 0.5, 3.0, 7.7, 11.1}) {
    const double ref = oracle::polar_curvature(R, c.xi(s), c.d1(s), c.d2(s));
    CHECK(graph_curvature(c, s) == doctest::Approx(std::abs(ref)).epsilon(1e-9));
  }
}

TEST_CASE("parallels on the sphere and the hyperbolic band") {
  for (double t0 : {-0.6, 0.3, 0.8}) {
    const Curve ps = Curve::constant("p", fixtures::sphere(), t0, 64);
    const Curve ph = Curve::constant("p", fixtures::hyperbolic(), t0, 64);
    CHECK(geodesic_curvature(ps).sup_norm == doctest::Approx(std::abs(std::tan(t0))).epsilon(1e-9));
    CHECK(geodesic_curvature(ph).sup_norm == doctest::Approx(std::abs(std::tanh(t0))).epsilon(1e-9));
  }
}

TEST_CASE("conformal curvature of a constant rescaling") {
  const Curve c = Curve::trig("c", fixtures::sphere(), 0.0, {{0.2, 2, 0.0}}, 256);
  const double lambda = 1.5;
  CHECK(curvature_sup(c, ConformalFactor::constant(std::log(lambda))) ==
        doctest::Approx(geodesic_curvature(c).sup_norm / lambda).epsilon(1e-12));
}

TEST_CASE("intrinsic distance by independent quadrature") {
  const Curve c = Curve::trig("c", fixtures::cylinder(), 0.0, {{0.4, 2, 0.0}}, 256);
  const int n = 20000;
  const double a = 0.3, b = 2.5, h = (b - a) / n;
  double acc = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    acc += w * std::sqrt(1 + c.d1(a + i * h) * c.d1(a + i * h));
  }
  acc *= h / 3;
  CHECK(intrinsic_distance(c, a, b) == doctest::Approx(acc).epsilon(1e-10));
}

TEST_CASE("parallels are 1-tame") {
  const TamenessReport r = tameness(Curve::constant("p", fixtures::cylinder(), 0.2, 128));
  CHECK(r.epsilon == doctest::Approx(1.0));
  CHECK(r.closed_form);
}

TEST_CASE("long-range tameness against exhaustive pairing") {
  const Curve c = Curve::trig("c", fixtures::wide_cylinder(), 0.0, {{1.0, 3, 0.0}}, 192);
  const TamenessReport r = tameness(c);
  // exhaustive ratio with trapezoid arc lengths
  const int n = c.size();
  std::vector<double> P(n + 1, 0.0);
  for (int i = 0; i < n; ++i) {
    const int k = 64;
    double acc = 0;
    for (int j = 0; j < k; ++j) {
      const double s = c.s_at(i) + c.spacing() * (j + 0.5) / k;
      acc += std::sqrt(1 + c.d1(s) * c.d1(s));
    }
    P[i + 1] = P[i] + acc * c.spacing() / k;
  }
  double best = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double di = std::min(P[j] - P[i], P[n] - (P[j] - P[i]));
      if (di < r.delta_min) continue;
      const double d = oracle::flat_cylinder(c.patch().length(), c.s_at(i), c.value(i), c.s_at(j), c.value(j));
      best = std::min(best, d / std::min(1.0, di));
    }
  CHECK(r.long_range == doctest::Approx(best).epsilon(1e-6));
  CHECK(r.epsilon <= r.long_range);
  CHECK(r.epsilon > 0);
}

TEST_CASE("arc sandwich on the flat cylinder") {
  const Curve c = Curve::trig("c", fixtures::cylinder(), 0.0, {{0.3, 3, 0.2}}, 256);
  const ArcSandwich s = arc_sandwich_check(c);
  CHECK(s.holds);
  CHECK(s.stretch == doctest::Approx(std::sqrt(1 + c.sup_abs_d1() * c.sup_abs_d1())));
}

TEST_CASE("distortion bound is enforced") {
  const Curve c = Curve::trig("c", fixtures::cylinder(), 0.0, {{0.2, 1, 0.0}}, 64);
  CHECK_THROWS_AS(tameness_comparison_check(c, ConformalFactor::constant(std::log(2.0)), 1.5), DistortionExceeded);
  CHECK_THROWS_AS(tameness_comparison_check(c, {}, 0.5), InvalidInput);
}

TEST_CASE("curves must stay in the band") {
  CHECK_THROWS_AS(Curve::trig("c", fixtures::cylinder(), 0.0, {{1.2, 1, 0.0}}, 64), OutOfPatch);
  CHECK_THROWS_AS(Curve::trig("c", fixtures::cylinder(), 0.0, {{0.2, 1, 0.0}}, 4), InvalidInput);
}
