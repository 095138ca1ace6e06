// Acceptance criteria: one PASS/FAIL line each, nonzero exit on any failure.
// usage: acceptance <path to lagbound CLI> <work dir>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lagbound/classifier.hpp"
#include "lagbound/config.hpp"
#include "lagbound/curve_metrics.hpp"
#include "lagbound/exactness.hpp"
#include "lagbound/hausdorff.hpp"
#include "lagbound/lemma_suite.hpp"
#include "lagbound/sasaki.hpp"

using namespace lagbound;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

PatchPtr patch(const std::string& name) {
  static std::map<std::string, PatchPtr> cache;
  static const ExperimentConfig cfg = default_config();
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  PatchPtr p = build_patch(cfg.patches.at(name), cfg.grid);
  cache.emplace(name, p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::mt19937_64 stream(std::uint64_t salt) {
  std::seed_seq seq{20240501u, static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

// 1
Outcome jacobi_taylor() {
  Outcome o;
  double worst = INFINITY;
  for (const char* name : {"cylinder", "plane", "sphere", "hyperbolic"}) {
    const PatchPtr p = patch(name);
    for (double frac : {0.0, 0.13, 0.5, 0.81}) {
      const TaylorCheck tc = warp_taylor_check(*p, frac * p->length());
      if (tc.remainder_exact) continue;
      worst = std::min(worst, tc.order);
      o.require(tc.order >= 2.9, std::string(name) + " order " + fmt(tc.order));
    }
  }
  o.detail = o.pass ? "min fitted order " + fmt(worst) + " (exact remainders skipped)" : o.detail;
  return o;
}

// 2
Outcome curvature_closed_form() {
  Outcome o;
  const PatchPtr p = solve_warp(flat_cylinder_base(2 * std::numbers::pi), std::numbers::pi);
  double worst = 0.0;
  for (double a : {0.1, 1.0})
    for (int m = 1; m <= 10; ++m) {
      const Curve c = Curve::trig("c", p, 0.0, {{a, m, 0.0}}, std::max(256, 64 * m));
      const double rel = std::abs(geodesic_curvature(c).sup_norm - a * m * m) / (a * m * m);
      worst = std::max(worst, rel);
      o.require(rel <= 1e-8, "a=" + fmt(a) + " m=" + std::to_string(m) + " rel " + fmt(rel));
    }
  if (o.pass) o.detail = "max relative error " + fmt(worst);
  return o;
}

// 3
Outcome radial_identity() {
  Outcome o;
  auto rng = stream(3);
  std::vector<std::pair<double, double>> ts;
  for (int i = 0; i < 20; ++i) ts.push_back({unit_uniform(rng), unit_uniform(rng)});
  double worst = -INFINITY;
  int rows = 0;
  for (const char* name : {"cylinder", "sphere"}) {
    const Curve n = Curve::trig("sigma", patch(name), 0.25, {{0.15, 1, 0.0}}, 256);
    for (const RadialRow& r : radial_path_check(n, ts)) {
      ++rows;
      worst = std::max(worst, r.residual - r.tolerance);
      o.require(r.residual <= r.tolerance, std::string(name) + " t=" + fmt(r.t) + " s=" + fmt(r.s) + " residual " +
                                               fmt(r.residual) + " > " + fmt(r.tolerance));
    }
  }
  o.require(rows == 40, "expected 40 rows");
  if (o.pass) o.detail = std::to_string(rows) + " rows, max residual - tolerance " + fmt(worst);
  return o;
}

// 4
Outcome shift_contract() {
  Outcome o;
  auto rng = stream(4);
  const char* names[] = {"cylinder", "plane", "sphere", "hyperbolic"};
  double residual = 0.0;
  for (int i = 0; i < 10; ++i) {
    const PatchPtr p = patch(names[i % 4]);
    const Curve xi = random_graph(rng, p, 0.99 * p->halfwidth() / 3, 8, "xi" + std::to_string(i), 256);
    o.require(xi.sup_abs() < p->halfwidth() / 3, "norm precondition");
    const ContractionPath path = build_contraction(xi, 101);
    const ContractionInvariants inv = check_invariants(path);
    residual = std::max(residual, inv.max_root_residual);
    o.require(path.alpha.size() == 101, "alpha grid");
    o.require(inv.max_root_residual <= 1e-12, xi.id() + " |A| " + fmt(inv.max_root_residual));
    o.require(inv.c_bound, xi.id() + " bound margin " + fmt(inv.worst_bound_margin));
    o.require(inv.c_lipschitz, xi.id() + " Lipschitz margin " + fmt(inv.worst_lipschitz_margin));
    o.require(inv.c0_zero && inv.in_patch, xi.id() + " c(0) or containment");
  }
  if (o.pass) o.detail = "10 graphs, max |A(xi_a)| " + fmt(residual);
  return o;
}

// 5
Outcome contraction_bounds() {
  Outcome o;
  auto rng = stream(5);
  double curv_margin = INFINITY, eps_margin = INFINITY;
  for (const char* name : {"cylinder", "plane", "sphere"}) {
    const PatchPtr p = patch(name);
    const double k = geodesic_curvature(Curve::constant("zero", p, 0.0, 64), false).sup_norm;
    for (int j = 0; j < 3; ++j) {
      const Curve xi = exactify(random_graph(rng, p, 0.05, 8, std::string(name) + "#" + std::to_string(j), 128));
      const ContractionPath path = build_contraction(xi, 11);
      ContractionBoundsOptions opt;
      opt.tameness_stride = 5;
      TamenessOptions topt;
      topt.estimate_error = false;
      const ContractionBounds b = contraction_bounds_check(path, k, k + 0.1, opt, topt);
      const double cb = std::max(k + 0.1, b.curvature.back()) + 1e-6;
      const double eb = std::min(b.eps0, b.eps1) - 5e-3;
      curv_margin = std::min(curv_margin, cb - b.max_curvature);
      eps_margin = std::min(eps_margin, b.min_epsilon - eb);
      o.require(b.max_curvature <= cb, xi.id() + " curvature " + fmt(b.max_curvature) + " > " + fmt(cb));
      o.require(b.min_epsilon >= eb, xi.id() + " epsilon " + fmt(b.min_epsilon) + " < " + fmt(eb));
    }
  }
  if (o.pass) o.detail = "9 graphs, curvature margin " + fmt(curv_margin) + ", epsilon margin " + fmt(eps_margin);
  return o;
}

// 6
Outcome sasaki_parabola() {
  Outcome o;
  auto rng = stream(6);
  auto u = [&rng] { return 2 * unit_uniform(rng) - 1; };
  double res = 0.0, lead = 0.0;
  for (BaseKind kind : {BaseKind::flat_torus, BaseKind::round_sphere}) {
    const BaseManifold2D base(kind);
    for (int k = 0; k < 25; ++k) {
      const Vec3d p(u() * 3, u() * 3, u());
      const SasakiState s = make_state(base, p, {u(), u()}, {u(), u()}, {u(), u()});
      const ParabolaFit f = parabola_check(base, sasaki_geodesic(base, s, 10.0, 0.005, 1e-6));
      res = std::max(res, f.max_residual);
      lead = std::max(lead, f.leading_error);
      const std::string id = to_string(kind) + "#" + std::to_string(k);
      o.require(f.max_residual <= 1e-6, id + " residual " + fmt(f.max_residual));
      o.require(f.leading_error <= 1e-6, id + " leading " + fmt(f.leading_error));
    }
  }
  if (o.pass) o.detail = "50 states, max residual " + fmt(res) + ", max leading error " + fmt(lead);
  return o;
}

// 7
Outcome graph_monotonicity() {
  Outcome o;
  double drop = 0.0;
  for (auto make : {&torus_cos, &torus_mixed, &sphere_harmonic1, &sphere_cubic})
    for (double e : {0.2, 0.1, 0.05}) {
      const GradientGraph g = make(e);
      const MonotonicityReport m = monotonicity_sweep(BaseManifold2D(g.base), g, 12, 720, 1e-8);
      drop = std::max(drop, m.worst_drop);
      o.require(m.t.size() == 11, "t grid");
      o.require(m.monotone && m.worst_drop <= 1e-8, g.name + "@" + fmt(e) + " drop " + fmt(m.worst_drop));
    }
  if (o.pass) o.detail = "12 graphs, worst drop " + fmt(drop);
  return o;
}

// 8
Outcome tameness_limits() {
  Outcome o;
  auto rng = stream(8);
  const PatchPtr cyl = patch("cylinder");
  const std::vector<double> as{0.4, 0.2, 0.1, 0.05, 0.025};
  double last = 1.0;
  for (int j = 0; j < 3; ++j) {
    const Curve base = random_graph(rng, cyl, 0.9, 4, "limit" + std::to_string(j), 256);
    double prev = -1.0, first = 0.0;
    for (double a : as) {
      const Curve c = base.affine(a, 0.0, "a=" + fmt(a));
      TamenessOptions topt;
      topt.estimate_error = false;
      const double eps = tameness(c, topt).epsilon;
      if (prev < 0) first = eps;
      o.require(prev < 0 || eps >= prev - 5e-3, c.id() + " epsilon " + fmt(eps) + " after " + fmt(prev));
      prev = eps;
      const ArcSandwich sw = arc_sandwich_check(c, 48, 1e-12);
      o.require(sw.holds, c.id() + " arc sandwich " + fmt(sw.worst_lower) + ", " + fmt(sw.worst_upper));
    }
    o.require(1 - prev <= 1 - first + 5e-3, base.id() + " does not approach 1");
    last = std::min(last, prev);
  }
  for (auto make : {&torus_cos, &torus_mixed, &sphere_cubic}) {
    double prev = -1.0;
    for (double a : as) {
      const GradientGraph g = make(a);
      const GraphTamenessResult t = graph_tameness_bounds(BaseManifold2D(g.base), g, 6, 1e-12);
      o.require(t.sandwich, g.name + "@" + fmt(a) + " sandwich " + fmt(t.worst_lower) + ", " + fmt(t.worst_upper));
      if (t.projection_evaluated) {
        o.require(prev < 0 || t.epsilon_estimate >= prev - 5e-3, g.name + " epsilon not increasing");
        prev = t.epsilon_estimate;
      }
    }
  }
  if (o.pass) o.detail = "epsilon at a=0.025 >= " + fmt(last) + ", sandwich holds on all pairs";
  return o;
}

// 9
Outcome escape_family() {
  Outcome o;
  FamilySpec spec;
  spec.id = FamilyId::escape_cos;
  const Family f = generate_family(spec);
  double lo = INFINITY, hi = 0.0;
  for (size_t i = 0; i < f.curves.size(); ++i) {
    const double m = f.parameter[i];
    const HausdorffResult h = hausdorff_distance(f.curves[i], *f.base_curve);
    lo = std::min(lo, h.value);
    hi = std::max(hi, h.value);
    o.require(h.value >= 0.9 && h.value <= 1.0 + h.error_bound, "m=" + fmt(m) + " delta_H " + fmt(h.value));
    const double B = geodesic_curvature(f.curves[i]).sup_norm;
    o.require(std::abs(B - m * m) <= 1e-8 * m * m, "m=" + fmt(m) + " |B| " + fmt(B));
  }
  FamilySpec hs;
  hs.id = FamilyId::hs_family;
  const LadderFit main = ladder_fit(generate_family(hs), false);
  o.require(std::abs(main.curvature_slope + 1.5) <= 0.1, "hs curvature slope " + fmt(main.curvature_slope));
  hs.id = FamilyId::hs_variant_alpha;
  hs.alpha = 0.5;
  const LadderFit var = ladder_fit(generate_family(hs), false);
  o.require(std::abs(var.curvature_slope + 0.5) <= 0.1, "variant curvature slope " + fmt(var.curvature_slope));
  o.require(var.d1_slope > 0 && var.d1_norm.back() < var.d1_norm.front(), "variant |xi'| does not decay");
  if (o.pass)
    o.detail = "delta_H in [" + fmt(lo) + ", " + fmt(hi) + "], slopes " + fmt(main.curvature_slope) + " and " +
               fmt(var.curvature_slope) + ", |xi'| slope " + fmt(var.d1_slope);
  return o;
}

// 10
Outcome tameness_comparison() {
  Outcome o;
  auto rng = stream(10);
  const PatchPtr cyl = patch("cylinder");
  const Curve xi = random_graph(rng, cyl, 0.3, 4, "cmp", 128);
  const double r = cyl->halfwidth();
  struct Case {
    const char* id;
    ConformalFactor cf;
    double phi_max;
  };
  const std::vector<Case> cases{
      {"constant", ConformalFactor::constant(std::log(1.2)), std::log(1.2)},
      {"wave", ConformalFactor::from([](double s, double t) { return 0.1 * std::sin(s) * std::cos(t); },
                                     [](double s, double t) { return 0.1 * std::cos(s) * std::cos(t); },
                                     [](double s, double t) { return -0.1 * std::sin(s) * std::sin(t); }),
       0.1},
      {"collar", ConformalFactor::from([](double, double t) { return 0.05 * t * t; }, [](double, double) { return 0.0; },
                                       [](double, double t) { return 0.1 * t; }),
       0.05 * r * r}};
  std::string summary;
  for (const auto& c : cases) {
    const double C = std::exp(2 * c.phi_max);
    TamenessOptions opt;
    opt.estimate_error = false;
    const ComparisonResult res = tameness_comparison_check(xi, c.cf, C, 5e-3, opt);
    o.require(res.holds, std::string(c.id) + " eps' " + fmt(res.epsilon_prime) + " < " + fmt(res.bound));
    summary += std::string(c.id) + " " + fmt(res.epsilon_prime) + ">=" + fmt(res.bound) + " ";
  }
  if (o.pass) o.detail = summary;
  return o;
}

// 11
Outcome isotopy_invariants() {
  Outcome o;
  FamilySpec p;
  p.id = FamilyId::parallels;
  p.levels = {-0.4, -0.2, 0.0, 0.2, 0.4};
  const Family par = generate_family(p);
  for (size_t i = 0; i < par.curves.size(); ++i) {
    const double v = isotopy_invariant(par.curves[i], InvariantKind::liouville_class).value;
    o.require(std::abs(v - 2 * std::numbers::pi * par.parameter[i]) <= 1e-8, "Liouville class at " + fmt(par.parameter[i]));
  }
  FamilySpec c;
  c.id = FamilyId::plane_circles;
  c.levels = {0.8, 1.0, 1.1, 1.3};
  const Family circ = generate_family(c);
  for (size_t i = 0; i < circ.curves.size(); ++i) {
    const double r = circ.parameter[i];
    const double v = isotopy_invariant(circ.curves[i], InvariantKind::enclosed_area).value;
    o.require(std::abs(v - std::numbers::pi * r * r) <= 1e-8, "area at r=" + fmt(r) + ": " + fmt(v));
  }
  const SeparationTable t = separation_scan(par.curves, InvariantKind::liouville_class);
  o.require(t.a_emp.has_value(), "no A_emp");
  if (t.a_emp) o.require(std::abs(*t.a_emp - 0.2) <= t.error_bound, "A_emp " + fmt(*t.a_emp) + " +- " + fmt(t.error_bound));
  if (o.pass) o.detail = "A_emp " + fmt(*t.a_emp) + " +- " + fmt(t.error_bound) + ", " + std::to_string(t.classes) + " classes";
  return o;
}

// 12
Outcome determinism(const std::string& cli, const fs::path& work) {
  Outcome o;
  std::vector<fs::path> dirs{work / "run1", work / "run2"};
  for (const auto& d : dirs) {
    fs::remove_all(d);
    const std::string cmd = "\"" + cli + "\" --seed 1 --out \"" + d.string() + "\" lemmas > \"" + d.string() + ".log\" 2>&1";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "lemmas run exited with " + std::to_string(rc));
  }
  int files = 0;
  for (const auto& e : fs::directory_iterator(dirs[0])) {
    const fs::path other = dirs[1] / e.path().filename();
    o.require(fs::exists(other), e.path().filename().string() + " missing in second run");
    if (fs::exists(other)) o.require(slurp(e.path()) == slurp(other), e.path().filename().string() + " differs");
    ++files;
  }
  int files2 = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dirs[1])) ++files2;
  o.require(files > 1 && files == files2, "bundle sizes " + std::to_string(files) + " and " + std::to_string(files2));
  if (o.pass) o.detail = std::to_string(files) + " files identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <lagbound CLI> <work dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const fs::path work = argv[2];
  fs::create_directories(work);

  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "jacobi-taylor remainder order", 5, jacobi_taylor},
      {2, "graph curvature a m^2", 5, curvature_closed_form},
      {3, "radial hausdorff identity", 60, radial_identity},
      {4, "area shift c(alpha)", 30, shift_contract},
      {5, "contraction bounds", 300, contraction_bounds},
      {6, "sasaki parabola", 60, sasaki_parabola},
      {7, "gradient-graph monotonicity", 120, graph_monotonicity},
      {8, "tameness limits", 120, tameness_limits},
      {9, "escape family and hs ladders", 120, escape_family},
      {10, "tameness comparison", 120, tameness_comparison},
      {11, "isotopy invariants", 10, isotopy_invariants},
      {12, "determinism", 600, [&] { return determinism(cli, work); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.limit_s) {
      o.pass = false;
      o.detail += " (runtime " + fmt(secs) + " s over " + fmt(c.limit_s) + " s)";
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %2d %-32s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
