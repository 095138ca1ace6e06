#include "lagbound/surface_geom.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

#include "lagbound/errors.hpp"
#include "lagbound/numeric.hpp"

namespace lagbound {

namespace {

constexpr double kMaxSubstep = 1e-3;
constexpr double kFdStep = 1e-5;

double kappa_prime(const BaseCurve& b, double s) {
  if (b.s_invariant) return 0.0;
  if (b.dkappa) return b.dkappa(s);
  return (b.kappa(s + kFdStep) - b.kappa(s - kFdStep)) / (2 * kFdStep);
}

double gauss_s(const BaseCurve& b, double s, double t) {
  if (b.s_invariant) return 0.0;
  if (b.dgauss_ds) return b.dgauss_ds(s, t);
  return (b.gauss(s + kFdStep, t) - b.gauss(s - kFdStep, t)) / (2 * kFdStep);
}

// y = (w, w_t, u, u_t, P, P_s), u = dw/ds
using State = std::array<double, 6>;

State rhs(const BaseCurve& b, double s, double t, const State& y) {
  const double K = b.gauss(s, t);
  const double Ks = gauss_s(b, s, t);
  return {y[1], -K * y[0], y[3], -K * y[2] - Ks * y[0], y[0], y[2]};
}

State rk4(const BaseCurve& b, double s, double t, const State& y, double h) {
  auto add = [](const State& a, const State& k, double f) {
    State r;
    for (int i = 0; i < 6; ++i) r[i] = a[i] + f * k[i];
    return r;
  };
  const State k1 = rhs(b, s, t, y);
  const State k2 = rhs(b, s, t + h / 2, add(y, k1, h / 2));
  const State k3 = rhs(b, s, t + h / 2, add(y, k2, h / 2));
  const State k4 = rhs(b, s, t + h, add(y, k3, h));
  State r;
  for (int i = 0; i < 6; ++i) r[i] = y[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return r;
}

}  // namespace

std::string to_string(PatchKind k) {
  switch (k) {
    case PatchKind::flat_cylinder: return "flat_cylinder";
    case PatchKind::plane_circle: return "plane_circle";
    case PatchKind::sphere_equator: return "sphere_equator";
    case PatchKind::hyperbolic_band: return "hyperbolic_band";
    case PatchKind::custom: return "custom";
  }
  return "custom";
}

PatchKind patch_kind_from_string(const std::string& s) {
  for (auto k : {PatchKind::flat_cylinder, PatchKind::plane_circle, PatchKind::sphere_equator,
                 PatchKind::hyperbolic_band, PatchKind::custom})
    if (to_string(k) == s) return k;
  throw InvalidInput("unknown patch kind '" + s + "'");
}

void validate(const BaseCurve& b) {
  if (!(b.length > 0.0) || !std::isfinite(b.length)) throw InvalidInput("base length must be positive");
  if (!b.kappa || !b.gauss) throw InvalidInput("base curve needs kappa and gauss");
  for (int i = 0; i < 16; ++i) {
    const double s = b.length * i / 16.0 + 0.0123;
    const double k0 = b.kappa(s), k1 = b.kappa(s + b.length);
    if (!std::isfinite(k0)) throw InvalidInput("kappa not finite");
    if (std::abs(k0 - k1) > 1e-12 * std::max(1.0, std::abs(k0)))
      throw InvalidInput("kappa not periodic with period length");
    for (double t : {-0.1, 0.0, 0.1}) {
      const double g0 = b.gauss(s, t), g1 = b.gauss(s + b.length, t);
      if (!std::isfinite(g0)) throw InvalidInput("gauss not finite");
      if (std::abs(g0 - g1) > 1e-12 * std::max(1.0, std::abs(g0)))
        throw InvalidInput("gauss not periodic with period length");
    }
  }
}

BaseCurve flat_cylinder_base(double length) {
  BaseCurve b;
  b.name = "flat_cylinder";
  b.kind = PatchKind::flat_cylinder;
  b.length = length;
  b.kappa = [](double) { return 0.0; };
  b.gauss = [](double, double) { return 0.0; };
  b.s_invariant = true;
  return b;
}

BaseCurve plane_circle_base(double radius) {
  if (!(radius > 0)) throw InvalidInput("circle radius must be positive");
  BaseCurve b;
  b.name = "plane_circle";
  b.kind = PatchKind::plane_circle;
  b.length = 2 * std::numbers::pi * radius;
  b.kappa = [radius](double) { return 1.0 / radius; };
  b.gauss = [](double, double) { return 0.0; };
  b.s_invariant = true;
  b.radius = radius;
  return b;
}

BaseCurve sphere_equator_base() {
  BaseCurve b;
  b.name = "sphere_equator";
  b.kind = PatchKind::sphere_equator;
  b.length = 2 * std::numbers::pi;
  b.kappa = [](double) { return 0.0; };
  b.gauss = [](double, double) { return 1.0; };
  b.s_invariant = true;
  return b;
}

BaseCurve hyperbolic_band_base(double length) {
  BaseCurve b;
  b.name = "hyperbolic_band";
  b.kind = PatchKind::hyperbolic_band;
  b.length = length;
  b.kappa = [](double) { return 0.0; };
  b.gauss = [](double, double) { return -1.0; };
  b.s_invariant = true;
  return b;
}

SurfacePatch::SurfacePatch(BaseCurve base, double halfwidth, GridResolution grid)
    : base_(std::move(base)), r_(halfwidth), grid_(grid) {
  validate(base_);
  if (!(r_ > 0)) throw InvalidInput("halfwidth must be positive");
  if (grid_.n_s < 4 || grid_.n_t < 5 || grid_.n_t % 2 == 0)
    throw InvalidInput("grid needs n_s >= 4 and odd n_t >= 5");

  cols_ = base_.s_invariant ? 1 : grid_.n_s;
  columns_.resize(cols_);
  const int sub = std::max(1, static_cast<int>(std::ceil(h_t() / kMaxSubstep - 1e-9)));
  min_warp_ = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cols_; ++i) {
    integrate_column(s_at(i), columns_[i], sub);
    for (double v : columns_[i].w) min_warp_ = std::min(min_warp_, v);
  }
  if (!(min_warp_ > 0.0))
    throw ChartDegenerate("warp field reaches " + std::to_string(min_warp_) +
                          " inside the band; halfwidth exceeds the focal radius");

  // Step-halving error estimate on a few columns.
  const int probes = std::min(cols_, 8);
  for (int p = 0; p < probes; ++p) {
    const int i = p * cols_ / probes;
    Column fine;
    integrate_column(s_at(i), fine, 2 * sub);
    for (int j = 0; j < grid_.n_t; ++j)
      integration_error_ = std::max(integration_error_, std::abs(fine.w[j] - columns_[i].w[j]));
  }

  const int ks = base_.s_invariant ? 1 : std::min(grid_.n_s, 256);
  for (int a = 0; a < ks; ++a)
    for (int j = 0; j < grid_.n_t; j += std::max(1, grid_.n_t / 64))
      gauss_abs_max_ = std::max(gauss_abs_max_, std::abs(base_.gauss(base_.length * a / ks, t_at(j))));
  gauss_abs_max_ = std::max(gauss_abs_max_, std::abs(base_.gauss(0.0, r_)));
  gauss_abs_max_ = std::max(gauss_abs_max_, std::abs(base_.gauss(0.0, -r_)));
}

void SurfacePatch::integrate_column(double s, Column& c, int sub) const {
  const int n = grid_.n_t;
  const int j0 = (n - 1) / 2;
  for (auto* v : {&c.w, &c.wt, &c.wtt, &c.u, &c.ut, &c.utt, &c.P, &c.Ps}) v->assign(n, 0.0);
  auto store = [&](int j, const State& y) {
    const double t = t_at(j);
    const double K = base_.gauss(s, t);
    const double Ks = gauss_s(base_, s, t);
    c.w[j] = y[0];
    c.wt[j] = y[1];
    c.wtt[j] = -K * y[0];
    c.u[j] = y[2];
    c.ut[j] = y[3];
    c.utt[j] = -K * y[2] - Ks * y[0];
    c.P[j] = y[4];
    c.Ps[j] = y[5];
  };
  const State y0{1.0, -base_.kappa(s), 0.0, -kappa_prime(base_, s), 0.0, 0.0};
  store(j0, y0);
  for (int dir : {+1, -1}) {
    State y = y0;
    const double h = dir * h_t() / sub;
    for (int j = j0; j != (dir > 0 ? n - 1 : 0); j += dir) {
      const double t0 = t_at(j);
      for (int k = 0; k < sub; ++k) y = rk4(base_, s, t0 + k * h, y, h);
      store(j + dir, y);
    }
  }
}

const SurfacePatch::Column& SurfacePatch::col(int i) const {
  if (cols_ == 1) return columns_[0];
  const int n = grid_.n_s;
  return columns_[((i % n) + n) % n];
}

double SurfacePatch::w(int i, int j) const { return col(i).w[j]; }
double SurfacePatch::w_t(int i, int j) const { return col(i).wt[j]; }
double SurfacePatch::w_s(int i, int j) const { return col(i).u[j]; }

double SurfacePatch::wrap(double s) const {
  const double l = base_.length;
  double r = std::fmod(s, l);
  if (r < 0) r += l;
  if (r >= l) r -= l;
  return r;
}

WarpSample SurfacePatch::sample(double s, double t) const {
  const double tol = 1e-12 * std::max(1.0, r_);
  if (!(t >= -r_ - tol && t <= r_ + tol)) throw OutOfPatch("t outside the band");
  const double ht = h_t();
  int j = static_cast<int>(std::floor((t + r_) / ht));
  j = std::clamp(j, 0, grid_.n_t - 2);
  const double tau = (t - t_at(j)) / ht;

  struct C {
    double w, wt, u, ut, P, Ps;
  };
  auto eval = [&](const Column& c) {
    return C{hermite(c.w[j], c.w[j + 1], c.wt[j], c.wt[j + 1], ht, tau),
             hermite(c.wt[j], c.wt[j + 1], c.wtt[j], c.wtt[j + 1], ht, tau),
             hermite(c.u[j], c.u[j + 1], c.ut[j], c.ut[j + 1], ht, tau),
             hermite(c.ut[j], c.ut[j + 1], c.utt[j], c.utt[j + 1], ht, tau),
             hermite(c.P[j], c.P[j + 1], c.w[j], c.w[j + 1], ht, tau),
             hermite(c.Ps[j], c.Ps[j + 1], c.u[j], c.u[j + 1], ht, tau)};
  };
  if (cols_ == 1) {
    const C a = eval(columns_[0]);
    return {a.w, a.wt, 0.0, a.P};
  }
  const double hs = h_s();
  const double sw = wrap(s);
  int i = static_cast<int>(std::floor(sw / hs));
  if (i >= grid_.n_s) i = grid_.n_s - 1;
  const double sig = (sw - i * hs) / hs;
  const C a = eval(col(i)), b = eval(col(i + 1));
  return {hermite(a.w, b.w, a.u, b.u, hs, sig), hermite(a.wt, b.wt, a.ut, b.ut, hs, sig),
          hermite_d(a.w, b.w, a.u, b.u, hs, sig), hermite(a.P, b.P, a.Ps, b.Ps, hs, sig)};
}

double SurfacePatch::warp_direct(double s, double t) const {
  const int n = std::max(16, static_cast<int>(std::ceil(std::abs(t) / 1e-4)));
  const double h = t / n;
  const double sw = wrap(s);
  double w = 1.0, wt = -base_.kappa(sw);
  auto f = [&](double tt, double a, double b, double& da, double& db) {
    da = b;
    db = -base_.gauss(sw, tt) * a;
  };
  for (int k = 0; k < n; ++k) {
    const double t0 = k * h;
    double a1, b1, a2, b2, a3, b3, a4, b4;
    f(t0, w, wt, a1, b1);
    f(t0 + h / 2, w + h / 2 * a1, wt + h / 2 * b1, a2, b2);
    f(t0 + h / 2, w + h / 2 * a2, wt + h / 2 * b2, a3, b3);
    f(t0 + h, w + h * a3, wt + h * b3, a4, b4);
    w += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    wt += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
  }
  return w;
}

double SurfacePatch::ode_residual() const {
  const double h = h_t();
  double worst = 0.0;
  for (int i = 0; i < cols_; i += std::max(1, cols_ / 64)) {
    const Column& c = columns_[i];
    for (int j = 2; j + 2 < grid_.n_t; ++j) {
      const double wtt = (-c.w[j + 2] + 16 * c.w[j + 1] - 30 * c.w[j] + 16 * c.w[j - 1] - c.w[j - 2]) / (12 * h * h);
      worst = std::max(worst, std::abs(wtt + base_.gauss(s_at(i), t_at(j)) * c.w[j]));
    }
  }
  return worst;
}

PatchPtr solve_warp(const BaseCurve& base, double r, GridResolution grid) {
  return std::make_shared<const SurfacePatch>(base, r, grid);
}

TaylorCheck warp_taylor_check(const SurfacePatch& patch, double s) {
  TaylorCheck out;
  out.s = patch.wrap(s);
  const double kap = patch.kappa(out.s);
  const double K = patch.gauss(out.s, 0.0);
  out.e0 = 1.0;
  out.e1 = -2.0 * kap;
  out.e2 = kap * kap - K;

  // Degree-6 least-squares fit of w^2 on Chebyshev nodes.
  const double a = std::min(0.05, 0.5 * patch.halfwidth());
  constexpr int m = 41, deg = 6;
  Eigen::MatrixXd V(m, deg + 1);
  Eigen::VectorXd y(m);
  for (int k = 0; k < m; ++k) {
    const double x = std::cos(std::numbers::pi * (k + 0.5) / m);
    const double w = patch.warp_direct(out.s, a * x);
    double p = 1.0;
    for (int d = 0; d <= deg; ++d, p *= x) V(k, d) = p;
    y(k) = w * w;
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
  out.c0 = c(0);
  out.c1 = c(1) / a;
  out.c2 = c(2) / (a * a);
  out.coefficient_error =
      std::max({std::abs(out.c0 - out.e0), std::abs(out.c1 - out.e1), std::abs(out.c2 - out.e2)});

  // Remainder order on each side of t = 0; the smaller slope is reported.
  const double tmax = std::min(0.1, 0.9 * patch.halfwidth());
  double order = std::numeric_limits<double>::infinity();
  int used = 0;
  for (int side : {+1, -1}) {
    std::vector<double> lx, ly;
    constexpr int n = 25;
    for (int k = 0; k < n; ++k) {
      const double t = 1e-3 * std::pow(tmax / 1e-3, k / double(n - 1));
      const double w = patch.warp_direct(out.s, side * t);
      const double st = side * t;
      const double R = w * w - (out.e0 + out.e1 * st + out.e2 * st * st);
      // Rounding grows with the number of RK4 steps taken by warp_direct.
      const double steps = std::max(16.0, std::ceil(t / 1e-4));
      const double floor = 4 * (16 + steps) * std::numeric_limits<double>::epsilon() * std::max(1.0, w * w);
      if (std::abs(R) > floor) {
        lx.push_back(std::log(t));
        ly.push_back(std::log(std::abs(R)));
      }
    }
    if (lx.size() >= 5) {
      order = std::min(order, fit_slope(lx, ly));
      used += static_cast<int>(lx.size());
    }
  }
  out.order = order;
  out.fit_points = used;
  out.remainder_exact = used == 0;
  return out;
}

Fn2 area_form(const SurfacePatch& patch) {
  return [&patch](double s, double t) { return patch.sample(s, t).w; };
}

double band_area(const SurfacePatch& patch) {
  const int n = patch.grid().n_s;
  const int last = patch.grid().n_t - 1;
  double acc = 0.0;
  if (patch.stored_single_column()) {
    const double h = patch.sample(0.0, patch.halfwidth()).area - patch.sample(0.0, -patch.halfwidth()).area;
    return patch.length() * h;
  }
  for (int i = 0; i < n; ++i) {
    const double s = patch.s_at(i);
    acc += patch.sample(s, patch.t_at(last)).area - patch.sample(s, patch.t_at(0)).area;
  }
  return acc * patch.h_s();
}

void write_warp_csv(const SurfacePatch& patch, std::ostream& out) {
  char buf[64];
  out << "# schema=1,length=" << fmt_double(patch.length()) << ",halfwidth=" << fmt_double(patch.halfwidth())
      << ",n_s=" << patch.grid().n_s << ",n_t=" << patch.grid().n_t << "\n";
  for (int i = 0; i < patch.grid().n_s; ++i) {
    for (int j = 0; j < patch.grid().n_t; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", patch.w(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace lagbound
