#include "lagbound/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "lagbound/errors.hpp"

namespace lagbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Directed {
  double value = 0.0;
  int arg = 0;
  int near = 0;
};

double max_spacing(const Curve& c, const ConformalFactor& cf) {
  double m = 0.0;
  for (int i = 0; i < c.size(); ++i)
    m = std::max(m, local_length(c.patch(), cf, c.point(i), c.point((i + 1) % c.size())));
  return m;
}

// Closed-form cylinder scan; only samples within the current upper bound in s are visited.
Directed directed_cylinder(const Curve& a, const Curve& b) {
  const double L = a.patch().length();
  const int nb = b.size();
  const double hb = b.spacing();
  Directed out;
  out.value = -1.0;
  for (int i = 0; i < a.size(); ++i) {
    const PatchPoint p = a.point(i);
    const int j0 = static_cast<int>(std::lround(a.s_at(i) / hb)) % nb;
    double best = cylinder_distance(L, p, b.point(j0));
    int bj = j0;
    for (int k = 1; k <= nb / 2; ++k) {
      if ((k - 1) * hb > best) break;
      for (int j : {j0 - k, j0 + k}) {
        const int jj = ((j % nb) + nb) % nb;
        const double d = cylinder_distance(L, p, b.point(jj));
        if (d < best || (d == best && jj < bj)) best = d, bj = jj;
      }
    }
    if (best > out.value) out = {best, i, bj};
  }
  return out;
}

Directed directed_grid(const DistanceGrid& g, const Curve& a, const Curve& b, Stencil st, double radius) {
  const auto src = b.points();
  DistanceField f = g.from_set(src, st, radius);
  Directed out;
  out.value = -1.0;
  for (int i = 0; i < a.size(); ++i) {
    const double d = f.at(a.point(i));
    if (!std::isfinite(d)) return {kInf, i, -1};
    if (d > out.value) out = {d, i, f.nearest_source(a.point(i))};
  }
  return out;
}

Directed directed_grid_auto(const DistanceGrid& g, const Curve& a, const Curve& b, Stencil st) {
  // Vertical segments give an upper bound for every point of a.
  double vmax = 0.0;
  for (int i = 0; i < a.size(); ++i) vmax = std::max(vmax, std::abs(a.value(i) - b.xi(a.s_at(i))));
  const double radius = vmax + 2 * max_spacing(b, g.conformal()) + 4 * g.cell_size();
  Directed d = directed_grid(g, a, b, st, radius * (g.conformal().identity ? 1.0 : 4.0));
  if (!std::isfinite(d.value)) d = directed_grid(g, a, b, st, kInf);
  return d;
}

}  // namespace

HausdorffResult hausdorff_distance(const Curve& a, const Curve& b, const HausdorffOptions& opt) {
  if (a.patch_ptr() != b.patch_ptr()) throw PatchMismatch("curves '" + a.id() + "' and '" + b.id() + "'");
  if (closed_form_distance(a.patch(), ConformalFactor::none())) {
    HausdorffResult r;
    r.closed_form = true;
    const double m = a.patch().h_t();
    for (const Curve* c : {&a, &b})
      if (c->sup_abs() > a.patch().halfwidth() - m) throw OutOfPatch("curve within one cell of the band edge");
    const Directed ab = directed_cylinder(a, b), ba = directed_cylinder(b, a);
    r.ab = ab.value;
    r.ba = ba.value;
    r.value = std::max(r.ab, r.ba);
    r.witness_a = a.point(ab.arg);
    r.witness_a_near = b.point(ab.near);
    r.witness_b = b.point(ba.arg);
    r.witness_b_near = a.point(ba.near);
    r.spacing = std::max(max_spacing(a, {}), max_spacing(b, {}));
    r.error_bound = r.spacing;
    return r;
  }
  const DistanceGrid g(a.patch_ptr(), opt.distance_stride);
  return hausdorff_distance(g, a, b, opt);
}

HausdorffResult hausdorff_distance(const DistanceGrid& g, const Curve& a, const Curve& b, const HausdorffOptions& opt) {
  if (a.patch_ptr() != b.patch_ptr() || a.patch_ptr() != g.patch_ptr())
    throw PatchMismatch("curves '" + a.id() + "' and '" + b.id() + "'");
  if (closed_form_distance(g.patch(), g.conformal())) return hausdorff_distance(a, b, opt);
  HausdorffResult r;
  const Directed ab = directed_grid_auto(g, a, b, opt.stencil);
  const Directed ba = directed_grid_auto(g, b, a, opt.stencil);
  r.ab = ab.value;
  r.ba = ba.value;
  r.value = std::max(r.ab, r.ba);
  r.witness_a = a.point(ab.arg);
  r.witness_a_near = b.point(std::max(0, ab.near));
  r.witness_b = b.point(ba.arg);
  r.witness_b_near = a.point(std::max(0, ba.near));
  r.spacing = std::max(max_spacing(a, g.conformal()), max_spacing(b, g.conformal()));
  if (opt.estimate_error) {
    const double ab8 = directed_grid_auto(g, a, b, Stencil::n8).value;
    const double ba8 = directed_grid_auto(g, b, a, Stencil::n8).value;
    r.field_error = std::abs(std::max(ab8, ba8) - r.value);
  }
  r.error_bound = r.spacing + r.field_error;
  return r;
}

std::vector<RadialRow> radial_path_check(const Curve& n, const std::vector<std::pair<double, double>>& ts,
                                         const HausdorffOptions& opt) {
  const double sig = n.sup_abs();
  const SurfacePatch& p = n.patch();
  std::unique_ptr<DistanceGrid> grid;
  if (!closed_form_distance(p, {})) grid = std::make_unique<DistanceGrid>(n.patch_ptr(), opt.distance_stride);
  const double margin = grid ? grid->h_t() : p.h_t();
  std::vector<RadialRow> rows;
  for (auto [t, s] : ts) {
    if (sig * std::max(std::abs(t), std::abs(s)) > p.halfwidth() - margin)
      throw OutOfPatch("section scaled by " + std::to_string(std::max(t, s)) + " leaves the band");
    const Curve a = n.affine(t, 0.0, n.id() + "_t");
    const Curve b = n.affine(s, 0.0, n.id() + "_s");
    const HausdorffResult h = grid ? hausdorff_distance(*grid, a, b, opt) : hausdorff_distance(a, b, opt);
    RadialRow row;
    row.t = t;
    row.s = s;
    row.value = h.value;
    row.predicted = std::abs(t - s) * sig;
    row.residual = std::abs(row.value - row.predicted);
    row.tolerance = 2 * h.error_bound;
    row.ok = row.residual <= row.tolerance;
    rows.push_back(row);
  }
  return rows;
}

PathBoundResult contraction_path_bound_check(const ContractionPath& path, const HausdorffOptions& opt) {
  PathBoundResult res;
  const SurfacePatch& p = path.xi.patch();
  if (!(path.xi_norm < p.halfwidth() / 3)) throw InvalidInput("contraction_path_bound_check needs |xi| < r/3");
  std::unique_ptr<DistanceGrid> grid;
  if (!closed_form_distance(p, {})) grid = std::make_unique<DistanceGrid>(path.xi.patch_ptr(), opt.distance_stride);
  res.worst_margin = kInf;
  const int m = static_cast<int>(path.alpha.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const Curve& a = path.curves[i];
      const Curve& b = path.curves[j];
      const HausdorffResult h = grid ? hausdorff_distance(*grid, a, b, opt) : hausdorff_distance(a, b, opt);
      const double bound = 2 * std::abs(path.alpha[i] - path.alpha[j]) * path.xi_norm;
      const double margin = bound + h.error_bound - h.value;
      ++res.pairs;
      if (margin < res.worst_margin) {
        res.worst_margin = margin;
        res.alpha = path.alpha[i];
        res.alpha2 = path.alpha[j];
        res.delta = h.value;
      }
    }
  if (m < 2) res.worst_margin = 0.0;
  res.holds = res.worst_margin >= 0.0;
  return res;
}

}  // namespace lagbound
