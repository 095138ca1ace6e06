#include "lagbound/sasaki.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "lagbound/errors.hpp"
#include "lagbound/numeric.hpp"

namespace lagbound {

std::string to_string(BaseKind k) { return k == BaseKind::flat_torus ? "flat_torus" : "round_sphere"; }

BaseKind base_kind_from_string(const std::string& s) {
  if (s == "flat_torus") return BaseKind::flat_torus;
  if (s == "round_sphere") return BaseKind::round_sphere;
  throw InvalidInput("unknown base manifold '" + s + "'");
}

// --- base manifold -----------------------------------------------------------

namespace {

double conf_factor(const Vec2d& u) { return 4.0 / std::pow(1.0 + u.squaredNorm(), 2); }

}  // namespace

Mat2d BaseManifold2D::metric(int, const Vec2d& u) const {
  if (kind_ == BaseKind::flat_torus) return Mat2d::Identity();
  return conf_factor(u) * Mat2d::Identity();
}

std::array<Mat2d, 2> BaseManifold2D::christoffel(int, const Vec2d& u) const {
  std::array<Mat2d, 2> g{Mat2d::Zero(), Mat2d::Zero()};
  if (kind_ == BaseKind::flat_torus) return g;
  // g = e^{2f} delta, f = log 2 - log(1 + |u|^2)
  const Vec2d df = -2.0 * u / (1.0 + u.squaredNorm());
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        g[k](i, j) = (k == i ? df(j) : 0.0) + (k == j ? df(i) : 0.0) - (i == j ? df(k) : 0.0);
  return g;
}

double BaseManifold2D::inner(int chart, const Vec2d& u, const Vec2d& a, const Vec2d& b) const {
  return a.dot(metric(chart, u) * b);
}

Vec2d BaseManifold2D::curvature(int chart, const Vec2d& u, const Vec2d& X, const Vec2d& Y, const Vec2d& Z) const {
  if (kind_ == BaseKind::flat_torus) return Vec2d::Zero();
  return gauss() * (inner(chart, u, Y, Z) * X - inner(chart, u, X, Z) * Y);
}

Vec3d BaseManifold2D::embed(int chart, const Vec2d& u) const {
  if (kind_ == BaseKind::flat_torus) return {u(0), u(1), 0.0};
  const double q = u.squaredNorm();
  const double z = chart == 0 ? (q - 1) / (q + 1) : (1 - q) / (q + 1);
  return {2 * u(0) / (1 + q), 2 * u(1) / (1 + q), z};
}

Vec2d BaseManifold2D::chart_of(int chart, const Vec3d& p) const {
  if (kind_ == BaseKind::flat_torus) return {p(0), p(1)};
  const double d = chart == 0 ? 1 - p(2) : 1 + p(2);
  return {p(0) / d, p(1) / d};
}

Eigen::Matrix<double, 3, 2> BaseManifold2D::embed_jacobian(int chart, const Vec2d& u) const {
  Eigen::Matrix<double, 3, 2> J;
  if (kind_ == BaseKind::flat_torus) {
    J << 1, 0, 0, 1, 0, 0;
    return J;
  }
  const double q = u.squaredNorm();
  const double d = (1 + q) * (1 + q);
  const double sgn = chart == 0 ? 1.0 : -1.0;
  for (int k = 0; k < 2; ++k) {
    J(0, k) = (2 * (k == 0 ? 1.0 : 0.0) * (1 + q) - 4 * u(0) * u(k)) / d;
    J(1, k) = (2 * (k == 1 ? 1.0 : 0.0) * (1 + q) - 4 * u(1) * u(k)) / d;
    J(2, k) = sgn * 4 * u(k) / d;
  }
  return J;
}

Mat2d BaseManifold2D::transition_jacobian(int, const Vec2d& u) const {
  if (kind_ == BaseKind::flat_torus) return Mat2d::Identity();
  const double q = u.squaredNorm();
  return (q * Mat2d::Identity() - 2.0 * u * u.transpose()) / (q * q);
}

bool BaseManifold2D::should_switch(int, const Vec2d& u) const {
  return kind_ == BaseKind::round_sphere && u.squaredNorm() > 2.25;
}

double BaseManifold2D::distance(const Vec3d& p, const Vec3d& q) const {
  if (kind_ == BaseKind::round_sphere) return std::atan2(p.cross(q).norm(), p.dot(q));
  const double tp = 2 * std::numbers::pi;
  const double a = std::remainder(p(0) - q(0), tp), b = std::remainder(p(1) - q(1), tp);
  return std::hypot(a, b);
}

// --- Sasaki geodesics ----------------------------------------------------------

double fibre_norm2(const BaseManifold2D& base, const SasakiState& s) { return base.inner(s.chart, s.x, s.Y, s.Y); }
double fibre_speed2(const BaseManifold2D& base, const SasakiState& s) { return base.inner(s.chart, s.x, s.Z, s.Z); }

SasakiState switch_chart(const BaseManifold2D& base, const SasakiState& s) {
  if (base.kind() == BaseKind::flat_torus) return s;
  const Mat2d J = base.transition_jacobian(s.chart, s.x);
  SasakiState o;
  o.chart = 1 - s.chart;
  o.x = s.x / s.x.squaredNorm();
  o.v = J * s.v;
  o.Y = J * s.Y;
  o.Z = J * s.Z;
  return o;
}

std::pair<Vec3d, Vec3d> tangent_frame(BaseKind kind, const Vec3d& p) {
  if (kind == BaseKind::flat_torus) return {Vec3d::UnitX(), Vec3d::UnitY()};
  const Vec3d a = std::abs(p(2)) > 0.9 ? Vec3d::UnitX() : Vec3d::UnitZ();
  const Vec3d e1 = (a - a.dot(p) * p).normalized();
  return {e1, p.cross(e1)};
}

SasakiState make_state(const BaseManifold2D& base, const Vec3d& point, const Vec2d& v, const Vec2d& Y,
                       const Vec2d& Z) {
  SasakiState s;
  Vec3d p = point;
  if (base.kind() == BaseKind::round_sphere) {
    p.normalize();
    s.chart = p(2) <= 0 ? 0 : 1;
  }
  s.x = base.chart_of(s.chart, p);
  const auto [e1, e2] = tangent_frame(base.kind(), p);
  const Eigen::Matrix<double, 3, 2> J = base.embed_jacobian(s.chart, s.x);
  const Mat2d G = J.transpose() * J;
  auto comp = [&](const Vec2d& c) -> Vec2d {
    const Vec3d amb = c(0) * e1 + c(1) * e2;
    return G.ldlt().solve(J.transpose() * amb);
  };
  s.v = comp(v);
  s.Y = comp(Y);
  s.Z = comp(Z);
  return s;
}

namespace {

struct Deriv {
  Vec2d x, v, Y, Z;
};

Vec2d gamma_apply(const std::array<Mat2d, 2>& g, const Vec2d& a, const Vec2d& b) {
  return {a.dot(g[0] * b), a.dot(g[1] * b)};
}

Deriv rhs(const BaseManifold2D& base, int chart, const SasakiState& s) {
  const auto g = base.christoffel(chart, s.x);
  Deriv d;
  d.x = s.v;
  d.v = -gamma_apply(g, s.v, s.v) - base.curvature(chart, s.x, s.Y, s.Z, s.v);
  d.Y = s.Z - gamma_apply(g, s.v, s.Y);
  d.Z = -gamma_apply(g, s.v, s.Z);
  return d;
}

SasakiState axpy(const SasakiState& s, const Deriv& d, double h) {
  SasakiState o = s;
  o.x += h * d.x;
  o.v += h * d.v;
  o.Y += h * d.Y;
  o.Z += h * d.Z;
  return o;
}

SasakiState rk4_step(const BaseManifold2D& base, const SasakiState& s, double h) {
  const Deriv k1 = rhs(base, s.chart, s);
  const Deriv k2 = rhs(base, s.chart, axpy(s, k1, h / 2));
  const Deriv k3 = rhs(base, s.chart, axpy(s, k2, h / 2));
  const Deriv k4 = rhs(base, s.chart, axpy(s, k3, h));
  SasakiState o = s;
  o.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
  o.v += h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
  o.Y += h / 6 * (k1.Y + 2 * k2.Y + 2 * k3.Y + k4.Y);
  o.Z += h / 6 * (k1.Z + 2 * k2.Z + 2 * k3.Z + k4.Z);
  return o;
}

Trajectory integrate(const BaseManifold2D& base, const SasakiState& init, double T, double h) {
  Trajectory tr;
  tr.step = h;
  const long n = std::lround(T / h);
  SasakiState s = init;
  if (base.should_switch(s.chart, s.x)) s = switch_chart(base, s);
  tr.samples.reserve(n + 1);
  tr.samples.push_back({0.0, s, fibre_norm2(base, s), fibre_speed2(base, s)});
  for (long k = 1; k <= n; ++k) {
    s = rk4_step(base, s, h);
    for (const auto* v : {&s.x, &s.v, &s.Y, &s.Z})
      if (!v->allFinite()) throw StepTooLarge("non-finite state at t=" + std::to_string(k * h));
    if (base.should_switch(s.chart, s.x)) {
      s = switch_chart(base, s);
      ++tr.chart_switches;
    }
    tr.samples.push_back({k * h, s, fibre_norm2(base, s), fibre_speed2(base, s)});
  }
  return tr;
}

}  // namespace

Trajectory sasaki_geodesic(const BaseManifold2D& base, const SasakiState& initial, double T, double h, double tol) {
  if (!(h > 0) || !(T >= 0)) throw InvalidInput("sasaki_geodesic needs h > 0 and T >= 0");
  Trajectory coarse = integrate(base, initial, T, h);
  const Trajectory fine = integrate(base, initial, T, h / 2);
  double err = 0.0;
  for (size_t k = 0; k < coarse.samples.size(); ++k) {
    const auto& a = coarse.samples[k];
    const auto& b = fine.samples[2 * k];
    const double dp = (base.embed(a.state.chart, a.state.x) - base.embed(b.state.chart, b.state.x)).norm();
    err = std::max({err, dp, std::abs(a.y2 - b.y2) / std::max(1.0, std::abs(b.y2))});
  }
  coarse.halving_error = err;
  if (err > tol) throw StepTooLarge("step-halving disagreement " + std::to_string(err) + " exceeds " + std::to_string(tol));
  return coarse;
}

ParabolaFit parabola_check(const BaseManifold2D& base, const Trajectory& tr) {
  (void)base;
  ParabolaFit f;
  std::vector<double> t, y;
  for (const auto& s : tr.samples) t.push_back(s.t), y.push_back(s.y2);
  const double z0 = tr.samples.front().z2;
  if (t.size() < 3) throw InvalidInput("trajectory too short for a quadratic fit");
  const auto c = poly_fit(t, y, 2);
  f.c0 = c[0];
  f.c1 = c[1];
  f.c2 = c[2];
  for (size_t k = 0; k < t.size(); ++k) {
    f.max_residual = std::max(f.max_residual, std::abs(y[k] - (c[0] + c[1] * t[k] + c[2] * t[k] * t[k])));
    f.z2_drift = std::max(f.z2_drift, std::abs(tr.samples[k].z2 - z0));
  }
  f.leading_error = std::abs(f.c2 - z0);
  f.constant = z0 == 0.0;
  return f;
}

// --- gradient graphs -----------------------------------------------------------

GraphJet graph_jet(const GradientGraph& gg, const Vec3d& p) {
  GraphJet j;
  const Vec3d g = gg.grad(p);
  const Mat3d H = gg.hess(p);
  const auto D3 = gg.third(p);
  if (gg.base == BaseKind::flat_torus) {
    j.xi = g.head<2>();
    j.A = H.topLeftCorner<2, 2>();
    for (int a = 0; a < 2; ++a) j.T[a] = D3[a].topLeftCorner<2, 2>();
    return j;
  }
  j.K = 1.0;
  const auto [e1, e2] = tangent_frame(BaseKind::round_sphere, p);
  const std::array<Vec3d, 2> e{e1, e2};
  const double pg = p.dot(g);
  const Vec3d Hp = H * p;
  for (int i = 0; i < 2; ++i) {
    j.xi(i) = e[i].dot(g);
    for (int k = 0; k < 2; ++k) j.A(i, k) = e[i].dot(H * e[k]) - (i == k ? pg : 0.0);
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        double d3 = 0.0;
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s)
            for (int q = 0; q < 3; ++q) d3 += D3[r](s, q) * e[a](r) * e[b](s) * e[c](q);
        double v = d3;
        if (a == b) v -= Hp.dot(e[c]);
        if (a == c) v -= Hp.dot(e[b]);
        if (b == c) v -= e[a].dot(g) + Hp.dot(e[a]);
        j.T[a](b, c) = v;
      }
  return j;
}

std::vector<Vec3d> base_samples(BaseKind kind, int n) {
  std::vector<Vec3d> out;
  if (kind == BaseKind::flat_torus) {
    const double h = 2 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out.push_back({i * h, k * h, 0.0});
    return out;
  }
  const int N = n * n;
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < N; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / N;
    const double rho = std::sqrt(std::max(0.0, 1 - z * z));
    out.push_back({rho * std::cos(golden * k), rho * std::sin(golden * k), z});
  }
  return out;
}

namespace {

// alpha(X, Z) = nabla^3 H(X, X, Z)
Vec2d alpha_vec(const GraphJet& j, const Vec2d& X) {
  Vec2d v = Vec2d::Zero();
  for (int a = 0; a < 2; ++a) v += X(a) * (j.T[a].transpose() * X);
  return v;
}

// beta(X, Z) = < A R(xi, A X) X, Z >
Vec2d beta_vec(const GraphJet& j, const Vec2d& X) {
  const Vec2d AX = j.A * X;
  const Vec2d R = j.K * (AX.dot(X) * j.xi - j.xi.dot(X) * AX);
  return j.A.transpose() * R;
}

double s_factor(const GraphJet& j, double t, const Vec2d& Y) {
  return 1.0 / std::sqrt(1.0 + (t * t - 1.0) * (j.A * Y).squaredNorm());
}

}  // namespace

double sff_value(const GraphJet& j, double t, const Vec2d& X, const Vec2d& Z) {
  // s_Y(t) expects Y scaled so that its lift at t = 1 is a unit vector.
  const Vec2d X1 = X / std::sqrt(X.squaredNorm() + (j.A * X).squaredNorm());
  const Vec2d Z1 = Z / std::sqrt(Z.squaredNorm() + (j.A * Z).squaredNorm());
  const double a = alpha_vec(j, X1).dot(Z1);
  const double b = beta_vec(j, X1).dot(Z1);
  const double sx = s_factor(j, t, X1), sz = s_factor(j, t, Z1);
  return sx * sx * sz * t * std::abs(a - t * t * b);
}

namespace {

double op_norm(const Mat2d& A) {
  Eigen::JacobiSVD<Mat2d> svd(A);
  return svd.singularValues()(0);
}

struct SupAt {
  double value = 0.0;
  double theta = 0.0, phi = 0.0;
};

// Sup over X on the angle grid; over Z in closed form, since t(alpha - t^2 beta)
// is linear in Z_t and the admissible Z_t fill the ellipse Z^T (I + t^2 A^2) Z = 1.
SupAt sweep_point(const GraphJet& j, double t, int angles) {
  SupAt best;
  if (t == 0.0) return best;
  const Mat2d M = Mat2d::Identity() + t * t * j.A.transpose() * j.A;
  const Mat2d Minv = M.inverse();
  for (int k = 0; k < angles; ++k) {
    const double th = std::numbers::pi * k / angles;
    const Vec2d e(std::cos(th), std::sin(th));
    const Vec2d Xt = e / std::sqrt(e.dot(M * e));
    const Vec2d V = alpha_vec(j, Xt) - t * t * beta_vec(j, Xt);
    const double val = t * std::sqrt(std::max(0.0, V.dot(Minv * V)));
    if (val > best.value) {
      const Vec2d zt = Minv * V;
      best = {val, th, std::atan2(zt(1), zt(0))};
    }
  }
  return best;
}

}  // namespace

SffReport graph_second_fundamental_form(const BaseManifold2D& base, const GradientGraph& gg, double t, int base_n,
                                        int angles, bool doubling) {
  SffReport r;
  r.t = t;
  double fine = 0.0;
  for (const Vec3d& p : base_samples(base.kind(), base_n)) {
    const GraphJet j = graph_jet(gg, p);
    const double g = op_norm(j.A);
    r.max_grad_xi = std::max(r.max_grad_xi, g);
    if (g >= 1.0) throw FrameDegenerate("|nabla xi| = " + std::to_string(g) + " >= 1");
    const SupAt s = sweep_point(j, t, angles);
    if (s.value > r.sup) {
      r.sup = s.value;
      r.at = p;
      r.theta = s.theta;
      r.phi = s.phi;
    }
    if (doubling) fine = std::max(fine, sweep_point(j, t, 2 * angles).value);
  }
  r.richardson = doubling ? std::abs(fine - r.sup) : 0.0;
  return r;
}

MonotonicityReport monotonicity_sweep(const BaseManifold2D& base, const GradientGraph& gg, int base_n, int angles,
                                      double tol) {
  MonotonicityReport m;
  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    m.t.push_back(t);
    m.sup.push_back(graph_second_fundamental_form(base, gg, t, base_n, angles, false).sup);
  }
  double running = 0.0;
  for (size_t k = 0; k < m.sup.size(); ++k) {
    running = std::max(running, m.sup[k]);
    m.worst_drop = std::max(m.worst_drop, running - m.sup[k]);
  }
  m.monotone = m.worst_drop <= tol;
  return m;
}

FrameCheck frame_consistency(const BaseManifold2D& base, const GradientGraph& gg, int base_n) {
  FrameCheck fc;
  for (const Vec3d& p : base_samples(base.kind(), base_n)) {
    const GraphJet j = graph_jet(gg, p);
    fc.symmetry_error = std::max(fc.symmetry_error, (j.A - j.A.transpose()).cwiseAbs().maxCoeff());
    for (int k = 0; k < 16; ++k) {
      const double th = std::numbers::pi * k / 16;
      const Vec2d X(std::cos(th), std::sin(th));
      const Vec2d Z(-std::sin(th + 0.3), std::cos(th + 0.3));
      // Sasaki metric is the orthogonal sum of horizontal and vertical parts.
      Eigen::Vector4d Xt, Zt;
      Xt << X, j.A * X;
      Zt << -(j.A.transpose() * Z), Z;
      fc.tangent_error = std::max(fc.tangent_error, std::abs(Xt.squaredNorm() - (X.squaredNorm() + (j.A * X).squaredNorm())));
      fc.normal_error = std::max(fc.normal_error, std::abs(Zt.squaredNorm() - (Z.squaredNorm() + (j.A * Z).squaredNorm())));
      fc.adjoint_error = std::max(fc.adjoint_error, std::abs((j.A.transpose() * Z).squaredNorm() - (j.A * Z).squaredNorm()));
      fc.normal_error = std::max(fc.normal_error, std::abs(Xt.dot(Zt)));
    }
  }
  return fc;
}

GraphTamenessResult graph_tameness_bounds(const BaseManifold2D& base, const GradientGraph& gg, int samples,
                                          double tol) {
  GraphTamenessResult res;
  const auto pts = base_samples(base.kind(), samples);
  std::vector<GraphJet> jets;
  for (const auto& p : pts) {
    jets.push_back(graph_jet(gg, p));
    res.max_grad_xi = std::max(res.max_grad_xi, op_norm(jets.back().A));
  }
  const bool torus = base.kind() == BaseKind::flat_torus;
  res.projection_evaluated = torus;
  res.worst_lower = res.worst_upper = res.worst_projection = std::numeric_limits<double>::infinity();
  res.epsilon_estimate = 1.0;

  struct PairData {
    double dl, dxi, dtl;
  };
  std::vector<PairData> data;
  double gmax = res.max_grad_xi;
  for (size_t a = 0; a < pts.size(); ++a)
    for (size_t b = a + 1; b < pts.size(); ++b) {
      const Vec3d p = pts[a], q = pts[b];
      const double dl = base.distance(p, q);
      if (dl < 1e-12) continue;
      if (!torus && dl > std::numbers::pi - 1e-3) continue;
      // Base geodesic and its speed vector at parameter u in [0, 1].
      auto geo = [&](double u, Vec3d& pos, Vec3d& vel) {
        if (torus) {
          const double tp = 2 * std::numbers::pi;
          const Vec3d d(std::remainder(q(0) - p(0), tp), std::remainder(q(1) - p(1), tp), 0.0);
          pos = p + u * d;
          vel = d;
        } else {
          const Vec3d w = (q - p.dot(q) * p).normalized();
          pos = std::cos(u * dl) * p + std::sin(u * dl) * w;
          vel = dl * (-std::sin(u * dl) * p + std::cos(u * dl) * w);
        }
      };
      auto lifted_speed = [&](double u) {
        Vec3d pos, vel;
        geo(u, pos, vel);
        const GraphJet j = graph_jet(gg, pos);
        gmax = std::max(gmax, op_norm(j.A));
        const auto [e1, e2] = tangent_frame(base.kind(), pos);
        const Vec2d c(vel.dot(e1), vel.dot(e2));
        return std::sqrt(c.squaredNorm() + (j.A * c).squaredNorm());
      };
      const double dxi = boost::math::quadrature::gauss_kronrod<double, 21>::integrate(lifted_speed, 0.0, 1.0, 10, 1e-12);
      double dtl = 0.0;
      if (torus) dtl = std::hypot(dl, (jets[a].xi - jets[b].xi).norm());
      data.push_back({dl, dxi, dtl});
    }
  res.max_grad_xi = gmax;
  res.implied_epsilon = 1.0 / std::sqrt(1.0 + gmax * gmax);
  const double stretch = std::sqrt(1.0 + gmax * gmax);
  for (const auto& d : data) {
    ++res.pairs;
    res.worst_lower = std::min(res.worst_lower, d.dxi - d.dl);
    res.worst_upper = std::min(res.worst_upper, stretch * d.dl - d.dxi);
    if (torus) {
      res.worst_projection = std::min(res.worst_projection, d.dtl - d.dl);
      res.epsilon_estimate = std::min(res.epsilon_estimate, d.dtl / std::min(1.0, d.dxi));
    }
  }
  res.sandwich = res.worst_lower >= -tol && res.worst_upper >= -tol;
  res.projection = !torus || res.worst_projection >= -tol;
  const bool eps_ok = !torus || res.epsilon_estimate >= res.implied_epsilon - tol;
  res.holds = res.sandwich && res.projection && eps_ok;
  if (!torus) res.worst_projection = 0.0;
  return res;
}

// --- suite members -------------------------------------------------------------

namespace {

std::array<Mat3d, 3> zero3() { return {Mat3d::Zero(), Mat3d::Zero(), Mat3d::Zero()}; }

}  // namespace

GradientGraph zero_graph(BaseKind kind) {
  GradientGraph g;
  g.name = "zero";
  g.base = kind;
  g.value = [](const Vec3d&) { return 0.0; };
  g.grad = [](const Vec3d&) { return Vec3d::Zero(); };
  g.hess = [](const Vec3d&) { return Mat3d::Zero(); };
  g.third = [](const Vec3d&) { return zero3(); };
  return g;
}

GradientGraph torus_cos(double eps) {
  GradientGraph g;
  g.name = "torus_cos";
  g.base = BaseKind::flat_torus;
  g.value = [eps](const Vec3d& p) { return eps * std::cos(p(0)); };
  g.grad = [eps](const Vec3d& p) { return Vec3d(-eps * std::sin(p(0)), 0, 0); };
  g.hess = [eps](const Vec3d& p) {
    Mat3d H = Mat3d::Zero();
    H(0, 0) = -eps * std::cos(p(0));
    return H;
  };
  g.third = [eps](const Vec3d& p) {
    auto T = zero3();
    T[0](0, 0) = eps * std::sin(p(0));
    return T;
  };
  return g;
}

GradientGraph torus_mixed(double eps) {
  GradientGraph g;
  g.name = "torus_mixed";
  g.base = BaseKind::flat_torus;
  g.value = [eps](const Vec3d& p) {
    return eps * (std::cos(p(0)) * std::cos(p(1)) + 0.3 * std::sin(2 * p(0)));
  };
  g.grad = [eps](const Vec3d& p) {
    const double c1 = std::cos(p(0)), s1 = std::sin(p(0)), c2 = std::cos(p(1)), s2 = std::sin(p(1));
    return Vec3d(eps * (-s1 * c2 + 0.6 * std::cos(2 * p(0))), -eps * c1 * s2, 0);
  };
  g.hess = [eps](const Vec3d& p) {
    const double c1 = std::cos(p(0)), s1 = std::sin(p(0)), c2 = std::cos(p(1)), s2 = std::sin(p(1));
    Mat3d H = Mat3d::Zero();
    H(0, 0) = eps * (-c1 * c2 - 1.2 * std::sin(2 * p(0)));
    H(0, 1) = H(1, 0) = eps * s1 * s2;
    H(1, 1) = -eps * c1 * c2;
    return H;
  };
  g.third = [eps](const Vec3d& p) {
    const double c1 = std::cos(p(0)), s1 = std::sin(p(0)), c2 = std::cos(p(1)), s2 = std::sin(p(1));
    const double f111 = eps * (s1 * c2 - 2.4 * std::cos(2 * p(0)));
    const double f112 = eps * c1 * s2;
    const double f122 = eps * s1 * c2;
    const double f222 = eps * c1 * s2;
    auto T = zero3();
    T[0](0, 0) = f111;
    T[0](0, 1) = T[0](1, 0) = T[1](0, 0) = f112;
    T[0](1, 1) = T[1](0, 1) = T[1](1, 0) = f122;
    T[1](1, 1) = f222;
    return T;
  };
  return g;
}

GradientGraph sphere_harmonic1(double eps) {
  GradientGraph g;
  g.name = "sphere_harmonic1";
  g.base = BaseKind::round_sphere;
  g.value = [eps](const Vec3d& p) { return eps * p(2); };
  g.grad = [eps](const Vec3d&) { return Vec3d(0, 0, eps); };
  g.hess = [](const Vec3d&) { return Mat3d::Zero(); };
  g.third = [](const Vec3d&) { return zero3(); };
  return g;
}

GradientGraph sphere_cubic(double eps) {
  GradientGraph g;
  g.name = "sphere_cubic";
  g.base = BaseKind::round_sphere;
  g.value = [eps](const Vec3d& p) { return eps * (p(0) * p(1) + 0.5 * p(2) * p(2) * p(2)); };
  g.grad = [eps](const Vec3d& p) { return Vec3d(eps * p(1), eps * p(0), eps * 1.5 * p(2) * p(2)); };
  g.hess = [eps](const Vec3d& p) {
    Mat3d H = Mat3d::Zero();
    H(0, 1) = H(1, 0) = eps;
    H(2, 2) = eps * 3 * p(2);
    return H;
  };
  g.third = [eps](const Vec3d&) {
    auto T = zero3();
    T[2](2, 2) = 3 * eps;
    return T;
  };
  return g;
}

}  // namespace lagbound
