#include "lagbound/exactness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lagbound/curve_metrics.hpp"
#include "lagbound/errors.hpp"

namespace lagbound {

double area_functional(const SurfacePatch& patch, std::span<const double> xi) {
  const int n = static_cast<int>(xi.size());
  const double h = patch.length() / n;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += patch.sample(i * h, xi[i]).area;
  return acc * h;
}

double area_functional(const Curve& xi) {
  std::vector<double> v(xi.size());
  for (int i = 0; i < xi.size(); ++i) v[i] = xi.value(i);
  return area_functional(xi.patch(), v);
}

double solve_c(const Curve& xi, double alpha) {
  const double norm = xi.sup_abs();
  if (!(norm < xi.patch().halfwidth() / 2)) throw InvalidInput("solve_c needs |xi| < r/2");
  if (alpha < 0) throw InvalidInput("alpha must be nonnegative");
  const int n = xi.size();
  std::vector<double> v(n);
  auto A = [&](double c) {
    for (int i = 0; i < n; ++i) v[i] = alpha * xi.value(i) + c;
    return area_functional(xi.patch(), v);
  };
  const double span = alpha * norm;
  if (span == 0.0) return 0.0;
  double lo = -span, hi = span;
  const double alo = A(lo), ahi = A(hi);
  if (std::abs(alo) <= 1e-13) return lo;
  if (std::abs(ahi) <= 1e-13) return hi;
  if (!(alo < 0 && ahi > 0)) throw NoBracket("A(alpha xi -+ alpha|xi|) = " + std::to_string(alo) + ", " + std::to_string(ahi));
  double best = 0.0, best_abs = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double am = A(mid);
    if (std::abs(am) < best_abs) best_abs = std::abs(am), best = mid;
    if (std::abs(am) <= 1e-13 || mid == lo || mid == hi) break;
    (am < 0 ? lo : hi) = mid;
  }
  return best;
}

ContractionPath build_contraction(const Curve& xi, int n_alpha) {
  if (n_alpha < 2) throw InvalidInput("contraction needs at least two alpha values");
  const double norm = xi.sup_abs();
  if (!(norm < xi.patch().halfwidth() / 3)) throw InvalidInput("build_contraction needs |xi| < r/3");
  ContractionPath p{xi, {}, {}, {}, norm, std::abs(area_functional(xi)) <= 1e-12};
  for (int k = 0; k < n_alpha; ++k) {
    const double a = static_cast<double>(k) / (n_alpha - 1);
    const double c = solve_c(xi, a);
    p.alpha.push_back(a);
    p.c.push_back(c);
    p.curves.push_back(xi.affine(a, c, xi.id() + "@" + std::to_string(k)));
  }
  return p;
}

ContractionInvariants check_invariants(const ContractionPath& p) {
  ContractionInvariants inv;
  const double nrm = p.xi_norm;
  const int m = static_cast<int>(p.alpha.size());
  inv.c0_zero = std::abs(p.c.front()) <= 1e-15;
  inv.c1_zero = !p.xi_exact || std::abs(p.c.back()) <= 1e-12;
  inv.c_bound = true;
  inv.c_lipschitz = true;
  inv.in_patch = true;
  inv.worst_bound_margin = std::numeric_limits<double>::infinity();
  inv.worst_lipschitz_margin = std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a) {
    const double margin = p.alpha[a] * nrm - std::abs(p.c[a]);
    inv.worst_bound_margin = std::min(inv.worst_bound_margin, margin);
    if (margin < -1e-15) inv.c_bound = false;
    for (int b = a + 1; b < m; ++b) {
      const double lm = nrm * std::abs(p.alpha[a] - p.alpha[b]) - std::abs(p.c[a] - p.c[b]);
      inv.worst_lipschitz_margin = std::min(inv.worst_lipschitz_margin, lm);
      if (lm < -1e-14) inv.c_lipschitz = false;
    }
    if (!(p.curves[a].sup_abs() < p.xi.patch().halfwidth())) inv.in_patch = false;
    inv.max_root_residual = std::max(inv.max_root_residual, std::abs(area_functional(p.curves[a])));
  }
  return inv;
}

Curve exactify(const Curve& xi) { return xi.affine(1.0, solve_c(xi, 1.0), xi.id() + "_exact"); }

ContractionBounds contraction_bounds_check(const ContractionPath& path, double k, double k_prime,
                                           const ContractionBoundsOptions& opt) {
  return contraction_bounds_check(path, k, k_prime, opt, TamenessOptions{});
}

ContractionBounds contraction_bounds_check(const ContractionPath& path, double k, double k_prime,
                                           const ContractionBoundsOptions& opt, const TamenessOptions& topt) {
  (void)k;
  ContractionBounds r;
  const int m = static_cast<int>(path.alpha.size());
  r.curvature.resize(m);
  r.epsilon.assign(m, std::numeric_limits<double>::quiet_NaN());
  for (int a = 0; a < m; ++a) {
    r.curvature[a] = geodesic_curvature(path.curves[a], false).sup_norm;
    if (r.curvature[a] > r.max_curvature) r.max_curvature = r.curvature[a], r.argmax_alpha = path.alpha[a];
  }
  r.curvature_bound = std::max(k_prime, r.curvature.back()) + opt.curvature_tol;
  r.curvature_holds = r.max_curvature <= r.curvature_bound;

  r.tameness_holds = true;
  if (opt.check_tameness) {
    const int stride = std::max(1, opt.tameness_stride);
    r.min_epsilon = std::numeric_limits<double>::infinity();
    for (int a = 0; a < m; ++a) {
      if (a % stride != 0 && a != m - 1) continue;
      r.epsilon[a] = tameness(path.curves[a], topt).epsilon;
      if (r.epsilon[a] < r.min_epsilon) r.min_epsilon = r.epsilon[a], r.argmin_alpha = path.alpha[a];
    }
    r.eps0 = r.epsilon.front();
    r.eps1 = r.epsilon.back();
    r.epsilon_bound = std::min(r.eps0, r.eps1) - opt.epsilon_tol;
    r.tameness_holds = r.min_epsilon >= r.epsilon_bound;
  }
  r.holds = r.curvature_holds && r.tameness_holds;
  return r;
}

std::string to_string(InvariantKind k) {
  return k == InvariantKind::liouville_class ? "liouville_class" : "enclosed_area";
}

InvariantKind invariant_kind_from_string(const std::string& s) {
  if (s == "liouville_class" || s == "cylinder") return InvariantKind::liouville_class;
  if (s == "enclosed_area" || s == "plane") return InvariantKind::enclosed_area;
  throw InvalidInput("unknown invariant kind '" + s + "'");
}

std::vector<Vec2> plane_polygon(const Curve& c) {
  if (c.patch().kind() != PatchKind::plane_circle) throw InvalidInput("plane polygon needs a plane_circle patch");
  const double R = c.patch().base().radius;
  std::vector<Vec2> p(c.size());
  for (int i = 0; i < c.size(); ++i) {
    const double rho = R - c.value(i);
    const double th = c.s_at(i) / R;
    p[i] = {rho * std::cos(th), rho * std::sin(th)};
  }
  return p;
}

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool segments_cross(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

void require_embedded(std::span<const Vec2> poly) {
  const size_t n = poly.size();
  if (n < 3) throw SelfIntersection("polygon with fewer than 3 vertices");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]))
        throw SelfIntersection("edges " + std::to_string(i) + " and " + std::to_string(j) + " cross");
    }
}

double polygon_area(std::span<const Vec2> poly) {
  require_embedded(poly);
  double acc = 0.0;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = poly[i], b = poly[(i + 1) % n];
    acc += a.x * b.y - a.y * b.x;
  }
  return 0.5 * acc;
}

IsotopyInvariant isotopy_invariant(const Curve& c, InvariantKind kind) {
  IsotopyInvariant inv;
  inv.kind = kind;
  if (kind == InvariantKind::liouville_class) {
    if (c.patch().kind() != PatchKind::flat_cylinder) throw InvalidInput("Liouville class needs a flat cylinder patch");
    double acc = 0.0;
    for (int i = 0; i < c.size(); ++i) acc += c.value(i);
    inv.value = acc * c.spacing();
    return inv;
  }
  const auto poly = plane_polygon(c);
  require_embedded(poly);
  // Green: (1/2) int (x y' - y x') ds = (1/2) int (R - xi)^2 / R ds.
  const double R = c.patch().base().radius;
  double acc = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    const double rho = R - c.value(i);
    acc += rho * rho / R;
  }
  inv.value = 0.5 * acc * c.spacing();
  inv.rho = inv.value / 2.0;
  return inv;
}

}  // namespace lagbound
