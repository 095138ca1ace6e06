#include "lagbound/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "lagbound/errors.hpp"
#include "lagbound/numeric.hpp"

namespace lagbound {

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "true";
    case Tri::no: return "false";
    default: return "indeterminate";
  }
}

Tri decide(double margin, double error) {
  if (margin > error) return Tri::yes;
  if (margin < -error) return Tri::no;
  return Tri::indeterminate;
}

CurveInvariants curve_invariants(const Curve& c, bool with_tameness, const TamenessOptions& opt) {
  CurveInvariants inv;
  const CurvatureReport cr = geodesic_curvature(c, true);
  inv.curvature_sup = cr.sup_norm;
  inv.curvature_error = cr.error_estimate;
  inv.sup_abs = c.sup_abs();
  inv.halfwidth = c.patch().halfwidth();
  inv.area = area_functional(c);
  inv.exact = std::abs(inv.area) <= 1e-12 * std::max(1.0, c.patch().length());
  if (with_tameness) {
    const TamenessReport tr = tameness(c, opt);
    inv.epsilon = tr.epsilon;
    inv.epsilon_error = tr.error_estimate;
  }
  return inv;
}

MembershipVerdict classify(const CurveInvariants& inv, double k) {
  if (!(k > 0)) throw InvalidInput("level k must be positive");
  MembershipVerdict v;
  v.k = k;
  v.exact = inv.exact;
  v.area = inv.area;
  v.curvature = {decide(k - inv.curvature_sup, inv.curvature_error), k - inv.curvature_sup, inv.curvature_error, true};
  const double cm = inv.halfwidth * (1.0 - 1.0 / (k + 1.0)) - inv.sup_abs;
  v.containment = {cm >= 0 ? Tri::yes : Tri::no, cm, 0.0, true};
  if (inv.epsilon) {
    const double tm = *inv.epsilon - 1.0 / (k + 1.0);
    v.tame = {decide(tm, inv.epsilon_error), tm, inv.epsilon_error, true};
  }
  std::vector<const Clause*> cl{&v.curvature, &v.containment, &v.tame};
  if (std::any_of(cl.begin(), cl.end(), [](auto* c) { return c->evaluated && c->state == Tri::no; }))
    v.verdict = Tri::no;
  else if (std::all_of(cl.begin(), cl.end(), [](auto* c) { return c->evaluated && c->state == Tri::yes; }))
    v.verdict = Tri::yes;
  else
    v.verdict = Tri::indeterminate;
  return v;
}

MembershipVerdict classify(const Curve& c, double k, const TamenessOptions& opt) {
  CurveInvariants inv = curve_invariants(c, false);
  if (decide(k - inv.curvature_sup, inv.curvature_error) != Tri::no) {
    const TamenessReport tr = tameness(c, opt);
    inv.epsilon = tr.epsilon;
    inv.epsilon_error = tr.error_estimate;
  }
  return classify(inv, k);
}

// --- families ------------------------------------------------------------------

std::string to_string(FamilyId f) {
  switch (f) {
    case FamilyId::escape_cos: return "escape_cos";
    case FamilyId::hs_family: return "hs_family";
    case FamilyId::hs_variant_alpha: return "hs_variant_alpha";
    case FamilyId::parallels: return "parallels";
    default: return "plane_circles";
  }
}

FamilyId family_id_from_string(const std::string& s) {
  for (FamilyId f : {FamilyId::escape_cos, FamilyId::hs_family, FamilyId::hs_variant_alpha, FamilyId::parallels,
                     FamilyId::plane_circles})
    if (to_string(f) == s) return f;
  throw InvalidInput("unknown family '" + s + "'");
}

namespace {

constexpr double kCircleBase = 1.05;

double default_halfwidth(FamilyId f) {
  switch (f) {
    case FamilyId::escape_cos: return std::numbers::pi;
    case FamilyId::hs_family:
    case FamilyId::hs_variant_alpha: return 0.5;
    case FamilyId::parallels: return 1.0;
    default: return 0.5;
  }
}

std::vector<double> default_ladder() {
  std::vector<double> s;
  for (int e = 7; e <= 14; ++e) s.push_back(std::ldexp(1.0, -e));
  return s;
}

std::vector<double> default_levels(FamilyId f) {
  if (f == FamilyId::plane_circles) return {1.0, 1.1};
  return {-0.4, -0.2, 0.0, 0.2, 0.4};
}

PatchPtr shared_patch(FamilyId f, double halfwidth) {
  static std::map<std::tuple<int, double>, PatchPtr> cache;
  const auto key = std::make_tuple(static_cast<int>(f == FamilyId::hs_variant_alpha ? FamilyId::hs_family : f), halfwidth);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BaseCurve base;
  switch (f) {
    case FamilyId::hs_family:
    case FamilyId::hs_variant_alpha: base = flat_cylinder_base(1.0); break;
    case FamilyId::plane_circles: base = plane_circle_base(kCircleBase); break;
    default: base = flat_cylinder_base(2 * std::numbers::pi);
  }
  PatchPtr p = solve_warp(base, halfwidth);
  cache.emplace(key, p);
  return p;
}

int pow2_at_least(double n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

double bump(double q, int d) {
  double x, sign;
  if (q <= 0.125 || q >= 0.875) return 0.0;
  if (q >= 0.25 && q <= 0.75) return d == 0 ? 1.0 : 0.0;
  if (q < 0.25) {
    x = 8 * (q - 0.125);
    sign = 1.0;
  } else {
    x = 8 * (0.875 - q);
    sign = -1.0;
  }
  const double x2 = x * x, x3 = x2 * x, x4 = x3 * x;
  switch (d) {
    case 0: return x4 * (35 - 84 * x + 70 * x2 - 20 * x3);
    case 1: return sign * 8 * x3 * (140 - 420 * x + 420 * x2 - 140 * x3);
    case 2: return 64 * x2 * (420 - 1680 * x + 2100 * x2 - 840 * x3);
    case 3: return sign * 512 * x * (840 - 5040 * x + 8400 * x2 - 4200 * x3);
    default: throw InvalidInput("bump derivative order must be 0..3");
  }
}

void validate(const FamilySpec& spec) {
  if (spec.halfwidth < 0) throw ParamOutOfRange("halfwidth must be nonnegative");
  const double hw = spec.halfwidth > 0 ? spec.halfwidth : default_halfwidth(spec.id);
  switch (spec.id) {
    case FamilyId::escape_cos:
      if (spec.mode_min < 1 || spec.mode_max < spec.mode_min) throw ParamOutOfRange("mode range must satisfy 1 <= min <= max");
      if (spec.mode_max > 64) throw ParamOutOfRange("modes above 64 are not supported");
      if (!(spec.amplitude > 0) || !(spec.amplitude < hw)) throw ParamOutOfRange("amplitude must lie in (0, halfwidth)");
      break;
    case FamilyId::hs_variant_alpha:
      if (!(spec.alpha > 0) || !(spec.alpha < 1)) throw ParamOutOfRange("alpha must lie in (0, 1)");
      [[fallthrough]];
    case FamilyId::hs_family:
      for (double s : spec.s_values)
        if (!(s >= std::ldexp(1.0, -16)) || !(s <= 0.125)) throw ParamOutOfRange("s must lie in [2^-16, 1/8]");
      break;
    case FamilyId::parallels:
      for (double c : spec.levels)
        if (!(std::abs(c) < hw)) throw ParamOutOfRange("parallel height outside the band");
      break;
    case FamilyId::plane_circles:
      if (!(hw < kCircleBase)) throw ParamOutOfRange("circle band must not reach the centre");
      for (double r : spec.levels)
        if (!(std::abs(kCircleBase - r) < hw)) throw ParamOutOfRange("radius outside the band");
      break;
  }
  if (spec.samples != 0 && spec.samples < 8) throw ParamOutOfRange("samples must be 0 or >= 8");
}

Family generate_family(const FamilySpec& spec) {
  validate(spec);
  Family f;
  f.spec = spec;
  const double hw = spec.halfwidth > 0 ? spec.halfwidth : default_halfwidth(spec.id);
  f.patch = shared_patch(spec.id, hw);
  const double L = f.patch->length();
  const int n0 = spec.samples > 0 ? spec.samples : 256;
  f.base_curve = Curve::constant("L0", f.patch, 0.0, spec.samples > 0 ? spec.samples : 1024);

  switch (spec.id) {
    case FamilyId::escape_cos:
      for (int m = spec.mode_min; m <= spec.mode_max; ++m) {
        const int n = spec.samples > 0 ? spec.samples : std::max(256, 64 * m);
        f.parameter.push_back(m);
        f.curves.push_back(Curve::trig("cos" + std::to_string(m), f.patch, 0.0, {{spec.amplitude, m, 0.0}}, n));
      }
      break;
    case FamilyId::hs_family:
    case FamilyId::hs_variant_alpha: {
      const auto ladder = spec.s_values.empty() ? default_ladder() : spec.s_values;
      const bool variant = spec.id == FamilyId::hs_variant_alpha;
      for (double s : ladder) {
        const double pre = std::pow(s, variant ? 2.0 + spec.alpha : 1.5);
        auto phase = [s](double q) { return (q - std::floor(q)) / s; };
        XiFunctions xf;
        xf.value = [=](double q) {
          const double u = phase(q), qq = q - std::floor(q);
          return -pre * (bump(qq, 1) * std::sin(u) + bump(qq) * std::cos(u) / s);
        };
        xf.d1 = [=](double q) {
          const double u = phase(q), qq = q - std::floor(q);
          return -pre * (bump(qq, 2) * std::sin(u) + 2 * bump(qq, 1) * std::cos(u) / s - bump(qq) * std::sin(u) / (s * s));
        };
        xf.d2 = [=](double q) {
          const double u = phase(q), qq = q - std::floor(q);
          return -pre * (bump(qq, 3) * std::sin(u) + 3 * bump(qq, 2) * std::cos(u) / s -
                         3 * bump(qq, 1) * std::sin(u) / (s * s) - bump(qq) * std::cos(u) / (s * s * s));
        };
        const int n = spec.samples > 0 ? spec.samples : std::max(1024, pow2_at_least(16.0 * L / s));
        f.parameter.push_back(s);
        f.curves.emplace_back((variant ? "hsv_" : "hs_") + fmt_double(s), f.patch, xf, n);
      }
      break;
    }
    case FamilyId::parallels:
      for (double c : spec.levels.empty() ? default_levels(spec.id) : spec.levels) {
        f.parameter.push_back(c);
        f.curves.push_back(Curve::constant("p=" + fmt_double(c), f.patch, c, n0));
      }
      break;
    case FamilyId::plane_circles:
      for (double r : spec.levels.empty() ? default_levels(spec.id) : spec.levels) {
        f.parameter.push_back(r);
        f.curves.push_back(Curve::constant("r=" + fmt_double(r), f.patch, kCircleBase - r, n0));
      }
      break;
  }
  return f;
}

SeparationTable separation_scan(const std::vector<Curve>& family, InvariantKind kind, double gap_tol) {
  SeparationTable t;
  t.kind = kind;
  for (const Curve& c : family) t.invariant.push_back(isotopy_invariant(c, kind).value);
  std::vector<double> distinct;
  for (double v : t.invariant)
    if (std::none_of(distinct.begin(), distinct.end(), [&](double d) { return std::abs(d - v) <= gap_tol; }))
      distinct.push_back(v);
  t.classes = static_cast<int>(distinct.size());
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i + 1; j < family.size(); ++j) {
      const double gap = std::abs(t.invariant[i] - t.invariant[j]);
      if (gap <= gap_tol) continue;
      const HausdorffResult h = hausdorff_distance(family[i], family[j]);
      t.rows.push_back({static_cast<int>(i), static_cast<int>(j), family[i].id(), family[j].id(), h.value, gap});
      t.error_bound = std::max(t.error_bound, h.error_bound);
      if (!t.a_emp || h.value < *t.a_emp) t.a_emp = h.value;
    }
  return t;
}

LadderFit ladder_fit(const Family& f, bool with_hausdorff) {
  if (f.spec.id != FamilyId::hs_family && f.spec.id != FamilyId::hs_variant_alpha)
    throw InvalidInput("ladder fits need an hs family");
  if (f.curves.size() < 2) throw InvalidInput("ladder needs at least two rungs");
  LadderFit r;
  std::vector<double> ls, lk, lx, ld;
  for (size_t i = 0; i < f.curves.size(); ++i) {
    const Curve& c = f.curves[i];
    const double s = f.parameter[i];
    r.s.push_back(s);
    r.curvature.push_back(geodesic_curvature(c, false).sup_norm);
    r.xi_norm.push_back(c.sup_abs());
    r.d1_norm.push_back(c.sup_abs_d1());
    if (with_hausdorff) {
      HausdorffOptions opt;
      opt.estimate_error = false;
      r.hausdorff.push_back(hausdorff_distance(c, *f.base_curve, opt).value);
    }
    ls.push_back(std::log(s));
    lk.push_back(std::log(r.curvature.back()));
    lx.push_back(std::log(r.xi_norm.back()));
    ld.push_back(std::log(r.d1_norm.back()));
  }
  r.curvature_slope = fit_slope(ls, lk);
  r.xi_slope = fit_slope(ls, lx);
  r.d1_slope = fit_slope(ls, ld);
  return r;
}

}  // namespace lagbound
