#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "lagbound/errors.hpp"
#include "lagbound/surface_geom.hpp"
#include "oracles.hpp"

using namespace lagbound;

TEST_CASE("warp matches closed forms on constant-curvature patches") {
  const double R = 2.0;
  for (double t : {-0.9, -0.4, 0.0, 0.3, 0.77, 0.95}) {
    for (double s : {0.0, 1.3, 4.1}) {
      CHECK(fixtures::cylinder()->sample(s, t).w == doctest::Approx(oracle::warp_flat(t)).epsilon(1e-13));
      CHECK(fixtures::plane()->sample(s * R / 2, t).w == doctest::Approx(oracle::warp_plane(R, t)).epsilon(1e-12));
      CHECK(fixtures::sphere()->sample(s, t).w == doctest::Approx(oracle::warp_sphere(t)).epsilon(1e-11));
      CHECK(fixtures::hyperbolic()->sample(s, t).w == doctest::Approx(oracle::warp_hyperbolic(t)).epsilon(1e-11));
    }
  }
}

TEST_CASE("warp t-derivative and area primitive") {
  const auto& p = *fixtures::sphere();
  for (double t : {-0.8, 0.1, 0.6}) {
    const WarpSample w = p.sample(0.7, t);
    CHECK(w.w_t == doctest::Approx(-std::sin(t)).epsilon(1e-10));
    CHECK(w.area == doctest::Approx(std::sin(t)).epsilon(1e-10));
    CHECK(std::abs(w.w_s) < 1e-12);
  }
  const auto& h = *fixtures::hyperbolic();
  CHECK(h.sample(2.0, 0.5).area == doctest::Approx(std::sinh(0.5)).epsilon(1e-10));
}

TEST_CASE("direct fine column agrees with the grid") {
  for (auto p : {fixtures::sphere(), fixtures::hyperbolic(), fixtures::plane()})
    for (double t : {-0.7, 0.45}) CHECK(std::abs(p->warp_direct(1.1, t) - p->sample(1.1, t).w) < 1e-11);
}

TEST_CASE("integration diagnostics are small") {
  for (auto p : {fixtures::sphere(), fixtures::hyperbolic(), fixtures::plane()}) {
    CHECK(p->integration_error() < 1e-12);
    CHECK(p->ode_residual() < 1e-8);
    CHECK(p->min_warp() > 0);
  }
}

TEST_CASE("Taylor coefficients of w^2") {
  struct Case {
    lagbound::PatchPtr p;
    double kappa, K;
  };
  for (const auto& c : {Case{fixtures::cylinder(), 0, 0}, Case{fixtures::plane(), 0.5, 0}, Case{fixtures::sphere(), 0, 1},
                        Case{fixtures::hyperbolic(), 0, -1}}) {
    const TaylorCheck tc = warp_taylor_check(*c.p, 0.4);
    CHECK(tc.c0 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(tc.c1 + 2 * c.kappa) < 1e-9);
    CHECK(std::abs(tc.c2 - (c.kappa * c.kappa - c.K)) < 1e-8);
    CHECK(tc.order >= 2.9);
  }
}

TEST_CASE("band areas") {
  CHECK(band_area(*fixtures::cylinder()) == doctest::Approx(4 * std::numbers::pi).epsilon(1e-12));
  CHECK(band_area(*fixtures::sphere()) == doctest::Approx(4 * std::numbers::pi * std::sin(1.0)).epsilon(1e-10));
  // annulus between radii 1 and 3
  CHECK(band_area(*fixtures::plane()) == doctest::Approx(std::numbers::pi * (9 - 1)).epsilon(1e-10));
}

TEST_CASE("Gaussian curvature bound") {
  CHECK(fixtures::sphere()->gauss_abs_max() == doctest::Approx(1.0));
  CHECK(fixtures::hyperbolic()->gauss_abs_max() == doctest::Approx(1.0));
  CHECK(fixtures::cylinder()->gauss_abs_max() == 0.0);
}

TEST_CASE("degenerate charts are rejected") {
  CHECK_THROWS_AS(solve_warp(plane_circle_base(0.5), 0.6, {64, 33}), ChartDegenerate);
  CHECK_THROWS_AS(solve_warp(sphere_equator_base(), 1.6, {64, 33}), ChartDegenerate);
  CHECK_THROWS_AS(solve_warp(flat_cylinder_base(1.0), -1.0, {64, 33}), InvalidInput);
}

TEST_CASE("non-periodic base data is rejected") {
  BaseCurve b = flat_cylinder_base(1.0);
  b.kind = PatchKind::custom;
  b.s_invariant = false;
  b.kappa = [](double s) { return s; };
  CHECK_THROWS_AS(validate(b), InvalidInput);
}

TEST_CASE("patch kind names round-trip") {
  for (PatchKind k : {PatchKind::flat_cylinder, PatchKind::plane_circle, PatchKind::sphere_equator, PatchKind::hyperbolic_band})
    CHECK(patch_kind_from_string(to_string(k)) == k);
  CHECK_THROWS_AS(patch_kind_from_string("torus"), InvalidInput);
}

TEST_CASE("warp CSV header") {
  std::ostringstream os;
  write_warp_csv(*solve_warp(flat_cylinder_base(1.0), 0.5, {16, 5}), os);
  const std::string s = os.str();
  CHECK(s.rfind("# schema=1", 0) == 0);
  CHECK(s.find('\r') == std::string::npos);
}
