#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "lagbound/distance.hpp"
#include "lagbound/errors.hpp"

namespace lagbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPhiStep = 1e-6;

struct Offset {
  int a, b;
};

const std::vector<Offset>& offsets(Stencil st) {
  static const std::vector<Offset> o8 = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  static const std::vector<Offset> o16 = [] {
    std::vector<Offset> v = o8;
    for (int sa : {1, -1})
      for (int sb : {1, -1}) {
        v.push_back({sa * 1, sb * 2});
        v.push_back({sa * 2, sb * 1});
      }
    return v;
  }();
  static const std::vector<Offset> o32 = [] {
    std::vector<Offset> v = o16;
    for (int sa : {1, -1})
      for (int sb : {1, -1}) {
        v.push_back({sa * 1, sb * 3});
        v.push_back({sa * 3, sb * 1});
        v.push_back({sa * 2, sb * 3});
        v.push_back({sa * 3, sb * 2});
      }
    return v;
  }();
  switch (st) {
    case Stencil::n8: return o8;
    case Stencil::n16: return o16;
    case Stencil::n32: return o32;
  }
  return o16;
}

double wrapped_ds(double length, double ds) {
  ds = std::remainder(ds, length);
  return ds;
}

}  // namespace

ConformalFactor ConformalFactor::constant(double log_lambda) {
  ConformalFactor c;
  c.identity = log_lambda == 0.0;
  c.phi = [log_lambda](double, double) { return log_lambda; };
  c.phi_s = [](double, double) { return 0.0; };
  c.phi_t = [](double, double) { return 0.0; };
  return c;
}

ConformalFactor ConformalFactor::from(Fn2 phi, Fn2 phi_s, Fn2 phi_t) {
  ConformalFactor c;
  c.identity = false;
  c.phi = std::move(phi);
  c.phi_s = std::move(phi_s);
  c.phi_t = std::move(phi_t);
  return c;
}

double ConformalFactor::ds(double s, double t) const {
  if (identity) return 0.0;
  if (phi_s) return phi_s(s, t);
  return (phi(s + kPhiStep, t) - phi(s - kPhiStep, t)) / (2 * kPhiStep);
}

double ConformalFactor::dt(double s, double t) const {
  if (identity) return 0.0;
  if (phi_t) return phi_t(s, t);
  return (phi(s, t + kPhiStep) - phi(s, t - kPhiStep)) / (2 * kPhiStep);
}

double local_length(const SurfacePatch& patch, const ConformalFactor& cf, PatchPoint p, PatchPoint q) {
  const double ds = wrapped_ds(patch.length(), q.s - p.s);
  const double dt = q.t - p.t;
  const double sm = p.s + 0.5 * ds, tm = 0.5 * (p.t + q.t);
  const double w = patch.sample(sm, tm).w;
  const double e = cf.identity ? 1.0 : std::exp(cf.phi(sm, tm));
  return e * std::hypot(w * ds, dt);
}

DistanceGrid::DistanceGrid(PatchPtr patch, int stride, ConformalFactor cf)
    : patch_(std::move(patch)), cf_(std::move(cf)) {
  const GridResolution g = patch_->grid();
  const int common = std::gcd(g.n_s, g.n_t - 1);
  if (stride <= 0) {
    // Largest divisor keeping the coarser cell side near 0.016.
    const double side = std::max(patch_->h_s(), patch_->h_t());
    stride = 1;
    for (int d = 1; d <= common; ++d)
      if (common % d == 0 && d * side <= 0.016 + 1e-12) stride = d;
  }
  if (g.n_s % stride || (g.n_t - 1) % stride) throw InvalidInput("distance stride must divide the warp grid");
  stride_ = stride;
  n_s_ = g.n_s / stride;
  n_t_ = (g.n_t - 1) / stride + 1;
  h_s_ = patch_->h_s() * stride;
  h_t_ = patch_->h_t() * stride;
  wf_.resize(static_cast<size_t>(n_s_) * n_t_);
  double wmax = 0.0, emax = 1.0;
  for (int i = 0; i < n_s_; ++i)
    for (int j = 0; j < n_t_; ++j) {
      const double w = patch_->w(i * stride, j * stride);
      wmax = std::max(wmax, w);
      const double e = cf_.identity ? 1.0 : std::exp(cf_.phi(s_at(i), t_at(j)));
      emax = std::max(emax, e);
      wf_[static_cast<size_t>(i) * n_t_ + j] = w;
    }
  cell_ = emax * std::max(wmax * h_s_, h_t_);
}

void DistanceGrid::require_margin(PatchPoint p) const {
  const double r = patch_->halfwidth();
  if (!(std::abs(p.t) <= r - h_t_ + 1e-12))
    throw OutOfPatch("point t=" + std::to_string(p.t) + " within one cell of the band edge");
}

void DistanceGrid::block(PatchPoint p, std::vector<int>& nodes) const {
  nodes.clear();
  const double s = patch_->wrap(p.s);
  const int i0 = static_cast<int>(std::floor(s / h_s_));
  const int j0 = static_cast<int>(std::floor((p.t + patch_->halfwidth()) / h_t_));
  for (int di = -1; di <= 2; ++di)
    for (int dj = -1; dj <= 2; ++dj) {
      const int j = j0 + dj;
      if (j < 0 || j >= n_t_) continue;
      const int i = ((i0 + di) % n_s_ + n_s_) % n_s_;
      nodes.push_back(i * n_t_ + j);
    }
}

DistanceField DistanceGrid::from(PatchPoint source, Stencil st, double radius) const {
  return from_set(std::span<const PatchPoint>(&source, 1), st, radius);
}

DistanceField DistanceGrid::from_set(std::span<const PatchPoint> sources, Stencil st, double radius) const {
  DistanceField f;
  f.grid_ = this;
  f.sources_.assign(sources.begin(), sources.end());
  f.stencil_ = st;
  f.radius_ = radius;
  const size_t N = wf_.size();
  f.dist_.assign(N, kInf);
  f.label_.assign(N, -1);

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  std::vector<int> nodes;
  for (size_t k = 0; k < sources.size(); ++k) {
    require_margin(sources[k]);
    block(sources[k], nodes);
    for (int v : nodes) {
      const PatchPoint q{s_at(v / n_t_), t_at(v % n_t_)};
      const double d = local_length(*patch_, cf_, sources[k], q);
      if (d < f.dist_[v]) {
        f.dist_[v] = d;
        f.label_[v] = static_cast<int>(k);
        pq.push({d, v});
      }
    }
  }

  struct Edge {
    int a, b;
    double ls2, lt2;  // squared coordinate lengths (a h_s)^2, (b h_t)^2
  };
  std::vector<Edge> edges;
  for (auto o : offsets(st)) edges.push_back({o.a, o.b, o.a * o.a * h_s_ * h_s_, o.b * o.b * h_t_ * h_t_});

  std::vector<double> efac;
  if (!cf_.identity) {
    efac.resize(N);
    for (size_t v = 0; v < N; ++v) efac[v] = std::exp(cf_.phi(s_at(static_cast<int>(v) / n_t_), t_at(static_cast<int>(v) % n_t_)));
  }

  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > f.dist_[v]) continue;
    if (d > radius) break;
    const int i = v / n_t_, j = v % n_t_;
    const double wv = wf_[v];
    for (const Edge& e : edges) {
      const int j2 = j + e.b;
      if (j2 < 0 || j2 >= n_t_) continue;
      int i2 = i + e.a;
      if (i2 < 0) i2 += n_s_;
      else if (i2 >= n_s_) i2 -= n_s_;
      const int u = i2 * n_t_ + j2;
      const double wm = 0.5 * (wv + wf_[u]);
      double len = std::sqrt(wm * wm * e.ls2 + e.lt2);
      if (!efac.empty()) len *= 0.5 * (efac[v] + efac[u]);
      const double nd = d + len;
      if (nd < f.dist_[u]) {
        f.dist_[u] = nd;
        f.label_[u] = f.label_[v];
        pq.push({nd, u});
      }
    }
  }
  if (std::isfinite(radius))
    for (size_t v = 0; v < N; ++v)
      if (f.dist_[v] > radius) f.dist_[v] = kInf, f.label_[v] = -1;
  return f;
}

double DistanceField::node(int i, int j) const { return dist_[static_cast<size_t>(i) * grid_->n_t() + j]; }

namespace {

struct Readout {
  double d;
  int label;
};

Readout read(const DistanceGrid& g, const std::vector<PatchPoint>& sources, const std::vector<double>& dist,
             const std::vector<int>& label, PatchPoint p, const std::vector<int>& nodes) {
  Readout best{kInf, -1};
  const SurfacePatch& patch = g.patch();
  for (int v : nodes) {
    if (!std::isfinite(dist[v])) continue;
    const PatchPoint q{g.s_at(v / g.n_t()), g.t_at(v % g.n_t())};
    const double d = dist[v] + local_length(patch, g.conformal(), q, p);
    if (d < best.d) best = {d, label[v]};
  }
  // Sources sharing the readout neighbourhood are reached directly.
  const double reach_s = 3 * g.h_s(), reach_t = 3 * g.h_t();
  for (size_t k = 0; k < sources.size(); ++k) {
    const PatchPoint& x = sources[k];
    if (std::abs(std::remainder(x.s - p.s, patch.length())) > reach_s || std::abs(x.t - p.t) > reach_t) continue;
    const double d = local_length(patch, g.conformal(), x, p);
    if (d < best.d || (d == best.d && static_cast<int>(k) < best.label)) best = {d, static_cast<int>(k)};
  }
  return best;
}

}  // namespace

double DistanceField::at(PatchPoint p) const {
  std::vector<int> nodes;
  grid_->block(p, nodes);
  return read(*grid_, sources_, dist_, label_, p, nodes).d;
}

int DistanceField::nearest_source(PatchPoint p) const {
  std::vector<int> nodes;
  grid_->block(p, nodes);
  return read(*grid_, sources_, dist_, label_, p, nodes).label;
}

double cylinder_distance(double length, PatchPoint x, PatchPoint y) {
  const double dq = std::abs(std::remainder(x.s - y.s, length));
  return std::hypot(dq, x.t - y.t);
}

bool closed_form_distance(const SurfacePatch& patch, const ConformalFactor& cf) {
  return patch.kind() == PatchKind::flat_cylinder && cf.identity;
}

DistanceEstimate ambient_distance_estimate(const DistanceGrid& grid, PatchPoint x, PatchPoint y) {
  grid.require_margin(x);
  grid.require_margin(y);
  if (closed_form_distance(grid.patch(), grid.conformal())) return {cylinder_distance(grid.patch().length(), x, y), 0.0};
  const double d16 = grid.from(x, Stencil::n16).at(y);
  const double d8 = grid.from(x, Stencil::n8).at(y);
  return {d16, std::abs(d8 - d16)};
}

double ambient_distance(const DistanceGrid& grid, PatchPoint x, PatchPoint y) {
  grid.require_margin(x);
  grid.require_margin(y);
  if (closed_form_distance(grid.patch(), grid.conformal())) return cylinder_distance(grid.patch().length(), x, y);
  return grid.from(x, Stencil::n16).at(y);
}

double ambient_distance(const PatchPtr& patch, PatchPoint x, PatchPoint y) {
  if (patch->kind() == PatchKind::flat_cylinder) {
    const double m = patch->h_t();
    if (std::abs(x.t) > patch->halfwidth() - m || std::abs(y.t) > patch->halfwidth() - m)
      throw OutOfPatch("point within one cell of the band edge");
    return cylinder_distance(patch->length(), x, y);
  }
  DistanceGrid g(patch);
  return ambient_distance(g, x, y);
}

}  // namespace lagbound
