#include "lagbound/curve_metrics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>

#include "lagbound/errors.hpp"

namespace lagbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Maximise f on [a, b] by Brent's method; returns (argmax, max).
std::pair<double, double> brent_max(const Fn1& f, double a, double b) {
  const auto r = boost::math::tools::brent_find_minima([&f](double x) { return -f(x); }, a, b,
                                                       std::numeric_limits<double>::digits / 2);
  return {r.first, -r.second};
}

double speed(const Curve& c, const ConformalFactor& cf, double s) {
  const double x = c.xi(s);
  const double w = c.patch().sample(s, x).w;
  const double v = std::hypot(w, c.d1(s));
  return cf.identity ? v : std::exp(cf.phi(s, x)) * v;
}

}  // namespace

double graph_curvature_signed(const SurfacePatch& patch, double s, double xi, double d1, double d2) {
  const WarpSample ws = patch.sample(s, xi);
  const double w = ws.w;
  const double a = 2 * w * ws.w_t;  // d_t w^2
  const double b = 2 * w * ws.w_s;  // d_s w^2
  const double e = d2 - 0.5 * a - (d1 / (w * w)) * (0.5 * b + d1 * a);
  const double q = w * w + d1 * d1;
  return w * e / (q * std::sqrt(q));
}

double graph_curvature_signed(const SurfacePatch& patch, const ConformalFactor& cf, double s, double xi, double d1,
                              double d2) {
  const double k = graph_curvature_signed(patch, s, xi, d1, d2);
  if (cf.identity) return k;
  const double w = patch.sample(s, xi).w;
  const double v = std::hypot(w, d1);
  const double dn = (-d1 / (w * v)) * cf.ds(s, xi) + (w / v) * cf.dt(s, xi);
  return std::exp(-cf.phi(s, xi)) * (k - dn);
}

double graph_curvature(const Curve& c, double s) {
  return std::abs(graph_curvature_signed(c.patch(), s, c.xi(s), c.d1(s), c.d2(s)));
}

namespace {

// Sampled sup of |kappa| refined around the first maximal sample.
std::pair<double, double> refined_sup(const Curve& c, const ConformalFactor& cf, std::vector<double>* pointwise) {
  const int n = c.size();
  int best = 0;
  double bv = -1.0;
  for (int i = 0; i < n; ++i) {
    const double v =
        std::abs(graph_curvature_signed(c.patch(), cf, c.s_at(i), c.value(i), c.slope(i), c.bend(i)));
    if (pointwise) pointwise->push_back(v);
    if (v > bv) bv = v, best = i;
  }
  const double h = c.spacing();
  const double s0 = c.s_at(best);
  const Fn1 f = [&c, &cf](double s) {
    return std::abs(graph_curvature_signed(c.patch(), cf, s, c.xi(s), c.d1(s), c.d2(s)));
  };
  const auto [xs, xv] = brent_max(f, s0 - h, s0 + h);
  if (xv > bv) return {c.patch().wrap(xs), xv};
  return {s0, bv};
}

}  // namespace

CurvatureReport geodesic_curvature(const Curve& c, bool estimate_error) {
  CurvatureReport r;
  r.s.reserve(c.size());
  for (int i = 0; i < c.size(); ++i) r.s.push_back(c.s_at(i));
  r.pointwise.reserve(c.size());
  const ConformalFactor id;
  std::tie(r.argmax_s, r.sup_norm) = refined_sup(c, id, &r.pointwise);
  r.error_estimate = 1e-12 * std::max(1.0, r.sup_norm);
  if (estimate_error) {
    const Curve fine = c.resampled(2 * c.size());
    const double s2 = refined_sup(fine, id, nullptr).second;
    r.error_estimate += std::abs(s2 - r.sup_norm);
  }
  return r;
}

double curvature_sup(const Curve& c, const ConformalFactor& cf) { return refined_sup(c, cf, nullptr).second; }

double arc_length(const Curve& c, double s, double delta, const ConformalFactor& cf) {
  if (delta <= 0) return 0.0;
  auto f = [&](double x) { return speed(c, cf, x); };
  // Split at sample spacing so the adaptive rule sees smooth pieces.
  const int pieces = std::max(1, static_cast<int>(std::ceil(delta / (16 * c.spacing()))));
  double acc = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double a = s + delta * k / pieces, b = s + delta * (k + 1) / pieces;
    acc += boost::math::quadrature::gauss_kronrod<double, 21>::integrate(f, a, b, 12, 1e-13);
  }
  return acc;
}

double intrinsic_distance(const Curve& c, double s, double s2, const ConformalFactor& cf) {
  const double L = c.patch().length();
  const double total = arc_length(c, 0.0, L, cf);
  double delta = std::fmod(s2 - s, L);
  if (delta < 0) delta += L;
  const double d = arc_length(c, s, delta, cf);
  return std::min(d, total - d);
}

ArcSandwich arc_sandwich_check(const Curve& c, int m, double tol) {
  if (m < 2) throw InvalidInput("arc sandwich needs at least two points");
  ArcSandwich r;
  const SurfacePatch& p = c.patch();
  const double L = p.length();
  double wmax = 0.0;
  r.w_min = kInf;
  for (int i = 0; i < c.size(); ++i) {
    const double w = p.sample(c.s_at(i), c.value(i)).w;
    wmax = std::max(wmax, w);
    r.w_min = std::min(r.w_min, w);
  }
  r.stretch = std::sqrt(wmax * wmax + c.sup_abs_d1() * c.sup_abs_d1());
  std::vector<double> P(m + 1, 0.0);
  for (int k = 0; k < m; ++k) P[k + 1] = P[k] + arc_length(c, L * k / m, L / m);
  r.worst_lower = r.worst_upper = kInf;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      const double db = L * (b - a) / m;
      const double dl = std::min(db, L - db);
      const double arc = P[b] - P[a];
      const double dxi = std::min(arc, P[m] - arc);
      r.worst_lower = std::min(r.worst_lower, dxi - r.w_min * dl);
      r.worst_upper = std::min(r.worst_upper, r.stretch * dl - dxi);
      ++r.pairs;
    }
  r.holds = r.worst_lower >= -tol && r.worst_upper >= -tol;
  return r;
}

double conformal_gauss_abs_max(const DistanceGrid& grid) {
  const SurfacePatch& p = grid.patch();
  const ConformalFactor& cf = grid.conformal();
  if (cf.identity) return p.gauss_abs_max();
  const double h = 1e-4;
  double worst = 0.0;
  for (int i = 0; i < grid.n_s(); i += 2)
    for (int j = 1; j + 1 < grid.n_t(); j += 2) {
      const double s = grid.s_at(i), t = grid.t_at(j);
      auto f1 = [&](double ss) { return cf.ds(ss, t) / p.sample(ss, t).w; };
      auto f2 = [&](double tt) { return p.sample(s, tt).w * cf.dt(s, tt); };
      const double w = p.sample(s, t).w;
      const double lap = ((f1(s + h) - f1(s - h)) + (f2(t + h) - f2(t - h))) / (2 * h) / w;
      const double k = std::exp(-2 * cf.phi(s, t)) * (p.gauss(s, t) - lap);
      worst = std::max(worst, std::abs(k));
    }
  return worst;
}

TamenessReport tameness(const Curve& c, const TamenessOptions& opt) {
  TamenessReport rep;
  const ConformalFactor& cf = opt.conformal;
  const SurfacePatch& patch = c.patch();
  const int n = c.size();

  rep.curvature_sup = cf.identity ? geodesic_curvature(c, false).sup_norm : curvature_sup(c, cf);
  rep.delta_min = opt.delta_min ? *opt.delta_min : std::min(0.05, 1.0 / (4 * rep.curvature_sup + 1));
  if (rep.curvature_sup * rep.delta_min >= 1.0)
    throw DegenerateCurve("|B| * delta_min = " + std::to_string(rep.curvature_sup * rep.delta_min) + " >= 1");

  // Prefix arc lengths over sample intervals.
  std::vector<double> P(n + 1, 0.0);
  auto f = [&](double x) { return speed(c, cf, x); };
  for (int i = 0; i < n; ++i)
    P[i + 1] = P[i] + boost::math::quadrature::gauss<double, 10>::integrate(f, c.s_at(i), c.s_at(i) + c.spacing());
  const double total = P[n];
  auto dxi = [&](int i, int j) {
    i = ((i % n) + n) % n;
    j = ((j % n) + n) % n;
    const double d = std::abs(P[j] - P[i]);
    return std::min(d, total - d);
  };

  rep.closed_form = closed_form_distance(patch, cf);
  std::unique_ptr<DistanceGrid> grid;
  if (!rep.closed_form) {
    grid = std::make_unique<DistanceGrid>(c.patch_ptr(), opt.distance_stride, cf);
    for (int i = 0; i < n; ++i) grid->require_margin(c.point(i));
  } else {
    const double m = patch.h_t();
    for (int i = 0; i < n; ++i)
      if (std::abs(c.value(i)) > patch.halfwidth() - m) throw OutOfPatch("curve within one cell of the band edge");
  }

  const double K = rep.closed_form ? patch.gauss_abs_max() : conformal_gauss_abs_max(*grid);
  rep.distortion = K * rep.delta_min * rep.delta_min / 6.0;
  rep.short_range = 1.0 - rep.curvature_sup * rep.curvature_sup * rep.delta_min * rep.delta_min / 24.0 - rep.distortion;

  double best = 1.0;
  int bi = -1, bj = -1;
  double bd = 0.0;
  for (int i = 0; i < n; ++i) {
    const PatchPoint x = c.point(i);
    DistanceField field;
    if (grid) field = grid->from(x, opt.stencil, best + 1e-9);
    for (int j = i + 1; j < n; ++j) {
      const double di = dxi(i, j);
      if (di < rep.delta_min) continue;
      const double d = grid ? field.at(c.point(j)) : cylinder_distance(patch.length(), x, c.point(j));
      const double ratio = d / std::min(1.0, di);
      if (ratio < best) best = ratio, bi = i, bj = j, bd = d;
    }
  }
  rep.long_range = best;
  if (bi >= 0) {
    rep.s = c.s_at(bi);
    rep.s2 = c.s_at(bj);
    rep.pair_d_ambient = bd;
    rep.pair_d_intrinsic = dxi(bi, bj);
  }
  rep.epsilon = std::min({1.0, rep.long_range, rep.short_range});
  rep.short_range_attained = rep.short_range < rep.long_range;

  if (opt.estimate_error && bi >= 0) {
    // Ratio variation over neighbouring sample pairs, plus stencil disagreement.
    double var = 0.0;
    for (int a = -1; a <= 1; ++a) {
      const int i = bi + a;
      DistanceField field;
      if (grid) field = grid->from(c.point(((i % n) + n) % n), opt.stencil, 2.0);
      for (int b = -1; b <= 1; ++b) {
        const int j = bj + b;
        const double di = dxi(i, j);
        if (di < rep.delta_min) continue;
        const PatchPoint y = c.point(((j % n) + n) % n);
        const double d = grid ? field.at(y) : cylinder_distance(patch.length(), c.point(((i % n) + n) % n), y);
        if (std::isfinite(d)) var = std::max(var, std::abs(d / std::min(1.0, di) - best));
      }
    }
    double stencil_err = 0.0;
    if (grid) {
      const double d8 = grid->from(c.point(bi), Stencil::n8, 2.0).at(c.point(bj));
      stencil_err = std::abs(d8 - bd) / std::min(1.0, rep.pair_d_intrinsic);
    }
    rep.error_estimate = var + stencil_err;
  }
  return rep;
}

ComparisonResult tameness_comparison_check(const Curve& c, const ConformalFactor& cf, double C, double tol,
                                           TamenessOptions opt) {
  if (!(C >= 1.0)) throw InvalidInput("distortion bound C must be >= 1");
  ComparisonResult res;
  res.C = C;
  res.tolerance = tol;
  if (!cf.identity) {
    const DistanceGrid g(c.patch_ptr(), opt.distance_stride, cf);
    const double slack = 1e-12;
    for (int i = 0; i < g.n_s(); ++i)
      for (int j = 0; j < g.n_t(); ++j) {
        const double e = std::exp(2 * cf.phi(g.s_at(i), g.t_at(j)));
        if (e < 1.0 / C - slack || e > C + slack)
          throw DistortionExceeded("e^{2 phi} = " + std::to_string(e) + " outside [1/C, C]");
      }
  }
  opt.conformal = ConformalFactor::none();
  res.epsilon = tameness(c, opt).epsilon;
  if (cf.identity) {
    res.epsilon_prime = res.epsilon;
  } else {
    opt.conformal = cf;
    res.epsilon_prime = tameness(c, opt).epsilon;
  }
  res.bound = res.epsilon / (C * C) - tol;
  res.holds = res.epsilon_prime >= res.bound;
  return res;
}

}  // namespace lagbound
