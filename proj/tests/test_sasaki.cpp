#include <cmath>
#include <numbers>

#include "doctest.h"
#include "lagbound/errors.hpp"
#include "lagbound/sasaki.hpp"
#include "oracles.hpp"

using namespace lagbound;

TEST_CASE("zero fibre follows a great circle") {
  const BaseManifold2D S(BaseKind::round_sphere);
  const Vec3d p(1, 0, 0);
  const SasakiState s0 = make_state(S, p, Vec2d(1, 0), Vec2d::Zero(), Vec2d::Zero());
  const Trajectory tr = sasaki_geodesic(S, s0, 3.0, 0.01);
  const auto [e1, e2] = tangent_frame(BaseKind::round_sphere, p);
  for (const auto& smp : tr.samples) {
    const Vec3d q = S.embed(smp.state.chart, smp.state.x);
    const Vec3d ref = std::cos(smp.t) * p + std::sin(smp.t) * e1;
    CHECK((q - ref).norm() < 1e-7);
    CHECK(smp.y2 == 0.0);
  }
}

TEST_CASE("chart transition is an isometry of the state") {
  const BaseManifold2D S(BaseKind::round_sphere);
  const SasakiState s = make_state(S, Vec3d(0.3, -0.5, 0.8).normalized(), Vec2d(0.4, 0.9), Vec2d(0.2, -0.1),
                                   Vec2d(-0.3, 0.6));
  const SasakiState t = switch_chart(S, s);
  CHECK(t.chart != s.chart);
  CHECK((S.embed(s.chart, s.x) - S.embed(t.chart, t.x)).norm() < 1e-13);
  CHECK(fibre_norm2(S, t) == doctest::Approx(fibre_norm2(S, s)).epsilon(1e-12));
  CHECK(fibre_speed2(S, t) == doctest::Approx(fibre_speed2(S, s)).epsilon(1e-12));
  const SasakiState back = switch_chart(S, t);
  CHECK((back.x - s.x).norm() < 1e-12);
  CHECK((back.Y - s.Y).norm() < 1e-12);
}

TEST_CASE("fibre norm is quadratic on the torus and the sphere") {
  for (BaseKind k : {BaseKind::flat_torus, BaseKind::round_sphere}) {
    const BaseManifold2D B(k);
    const Vec3d p = k == BaseKind::flat_torus ? Vec3d(0.4, 1.1, 0) : Vec3d(0, 0.6, 0.8);
    const SasakiState s0 = make_state(B, p, Vec2d(0.7, -0.2), Vec2d(0.3, 0.1), Vec2d(-0.2, 0.25));
    const ParabolaFit f = parabola_check(B, sasaki_geodesic(B, s0, 10.0, 0.005, 1e-6));
    CHECK(f.leading_error < 1e-6);
    CHECK(f.c2 == doctest::Approx(0.2 * 0.2 + 0.25 * 0.25).epsilon(1e-6));
    CHECK(f.c0 == doctest::Approx(0.1).epsilon(1e-6));
  }
}

TEST_CASE("a coarse step is reported") {
  const BaseManifold2D S(BaseKind::round_sphere);
  const SasakiState s0 = make_state(S, Vec3d(1, 0, 0), Vec2d(3, 1), Vec2d(2, 1), Vec2d(1, -2));
  CHECK_THROWS_AS(sasaki_geodesic(S, s0, 10.0, 0.5, 1e-10), StepTooLarge);
}

TEST_CASE("torus jets are the Hessian and third derivatives") {
  const GradientGraph g = torus_mixed(0.3);
  const Vec3d p(0.7, -1.2, 0);
  const GraphJet j = graph_jet(g, p);
  const Mat3d H = g.hess(p);
  CHECK((j.A - H.topLeftCorner<2, 2>()).norm() < 1e-14);
  CHECK(j.xi(0) == doctest::Approx(g.grad(p)(0)));
  // finite-difference check of the Hessian
  const double h = 1e-5;
  const Vec3d dx(h, 0, 0);
  CHECK(j.A(0, 0) == doctest::Approx((g.grad(p + dx)(0) - g.grad(p - dx)(0)) / (2 * h)).epsilon(1e-8));
  CHECK(j.K == 0.0);
}

TEST_CASE("sphere jets satisfy the Ricci identity") {
  // T[a](b,c) - T[b](a,c) = K(<e_a, e_c> xi_b - <e_b, e_c> xi_a)
  const GradientGraph g = sphere_cubic(0.2);
  for (const Vec3d& p : base_samples(BaseKind::round_sphere, 4)) {
    const GraphJet j = graph_jet(g, p);
    CHECK((j.A - j.A.transpose()).norm() < 1e-13);
    for (int c = 0; c < 2; ++c) {
      const double lhs = j.T[0](1, c) - j.T[1](0, c);
      const double rhs = j.K * ((c == 0 ? 1.0 : 0.0) * j.xi(1) - (c == 1 ? 1.0 : 0.0) * j.xi(0));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("closed-form sup over Z against a dense search") {
  // base_n = 1 samples only the origin of the torus
  const GradientGraph g = torus_mixed(0.35);
  const GraphJet j = graph_jet(g, Vec3d(0, 0, 0));
  const BaseManifold2D T(BaseKind::flat_torus);
  for (double t : {0.3, 0.8, 1.0}) {
    double best = 0.0;
    const int n = 720;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const double x = std::numbers::pi * a / n, z = std::numbers::pi * b / n;
        best = std::max(best, sff_value(j, t, Vec2d(std::cos(x), std::sin(x)), Vec2d(std::cos(z), std::sin(z))));
      }
    const SffReport r = graph_second_fundamental_form(T, g, t, 1, 720, false);
    CHECK(best <= r.sup + 1e-12);
    CHECK(best >= r.sup * (1 - 2e-4));
  }
}

TEST_CASE("zero graph has vanishing form") {
  const BaseManifold2D T(BaseKind::flat_torus);
  const MonotonicityReport m = monotonicity_sweep(T, zero_graph(BaseKind::flat_torus), 4, 90);
  CHECK(m.monotone);
  for (double v : m.sup) CHECK(v == 0.0);
}

TEST_CASE("steep graphs degenerate the frame") {
  const BaseManifold2D T(BaseKind::flat_torus);
  CHECK_THROWS_AS(graph_second_fundamental_form(T, torus_cos(1.5), 1.0, 8, 90), FrameDegenerate);
}

TEST_CASE("lifted frames") {
  const BaseManifold2D S(BaseKind::round_sphere);
  const FrameCheck f = frame_consistency(S, sphere_harmonic1(0.3), 6);
  CHECK(f.tangent_error < 1e-12);
  CHECK(f.normal_error < 1e-12);
  CHECK(f.adjoint_error < 1e-12);
  CHECK(f.symmetry_error < 1e-12);
}

TEST_CASE("graph tameness on both bases") {
  for (BaseKind k : {BaseKind::flat_torus, BaseKind::round_sphere}) {
    const BaseManifold2D B(k);
    const GradientGraph g = k == BaseKind::flat_torus ? torus_cos(0.3) : sphere_harmonic1(0.3);
    const GraphTamenessResult r = graph_tameness_bounds(B, g, 8);
    CHECK(r.holds);
    CHECK(r.implied_epsilon == doctest::Approx(1 / std::sqrt(1 + r.max_grad_xi * r.max_grad_xi)));
  }
}

TEST_CASE("base names") {
  CHECK(base_kind_from_string(to_string(BaseKind::round_sphere)) == BaseKind::round_sphere);
  CHECK_THROWS_AS(base_kind_from_string("klein"), InvalidInput);
}
