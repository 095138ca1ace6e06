#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lagbound/classifier.hpp"
#include "lagbound/config.hpp"
#include "lagbound/curve_metrics.hpp"
#include "lagbound/errors.hpp"
#include "lagbound/exactness.hpp"
#include "lagbound/figure.hpp"
#include "lagbound/hausdorff.hpp"
#include "lagbound/lemma_suite.hpp"
#include "lagbound/numeric.hpp"
#include "lagbound/report.hpp"
#include "lagbound/sasaki.hpp"

namespace fs = std::filesystem;
using namespace lagbound;

namespace {

struct Globals {
  std::string config;
  std::string out;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::string grid;
};

ExperimentConfig resolve(const Globals& g) {
  ExperimentConfig c = g.config.empty() ? default_config() : load_config(g.config);
  if (!g.out.empty()) c.out_dir = g.out;
  if (g.tol) {
    if (!(*g.tol >= 0)) throw ConfigError("--tol must be nonnegative");
    c.tol_override = g.tol;
  }
  if (g.seed) c.seed = *g.seed;
  if (!g.grid.empty()) c.grid = parse_grid(g.grid);
  return c;
}

// "c0;a:m[:phase];..." meaning c0 + sum a cos(2 pi m s / L + phase)
std::pair<double, std::vector<TrigTerm>> parse_xi(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ';')) parts.push_back(item);
  if (parts.empty()) throw InvalidInput("empty curve spec");
  auto num = [&spec](const std::string& s) {
    size_t p = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &p);
    } catch (const std::exception&) {
      p = 0;
    }
    if (p == 0 || p != s.size()) throw InvalidInput("bad number '" + s + "' in curve spec '" + spec + "'");
    return v;
  };
  const double c0 = parts[0].empty() ? 0.0 : num(parts[0]);
  std::vector<TrigTerm> terms;
  for (size_t i = 1; i < parts.size(); ++i) {
    std::vector<std::string> f;
    std::stringstream ts(parts[i]);
    while (std::getline(ts, item, ':')) f.push_back(item);
    if (f.size() < 2 || f.size() > 3) throw InvalidInput("term '" + parts[i] + "' is not a:m[:phase]");
    const double m = num(f[1]);
    if (m != std::floor(m) || m < 1) throw InvalidInput("mode in '" + parts[i] + "' must be a positive integer");
    terms.push_back({num(f[0]), static_cast<int>(m), f.size() == 3 ? num(f[2]) : 0.0});
  }
  return {c0, terms};
}

struct PatchOpts {
  std::string name = "cylinder";
  double halfwidth = 0.0;
};

PatchPtr make_patch(const ExperimentConfig& c, const PatchOpts& p) {
  const auto it = c.patches.find(p.name);
  if (it == c.patches.end()) throw ConfigError("unknown patch '" + p.name + "'");
  PatchSpec spec = it->second;
  if (p.halfwidth > 0) spec.halfwidth = p.halfwidth;
  return build_patch(spec, c.grid);
}

Curve make_curve(const std::string& id, const std::string& xi, PatchPtr patch, int n) {
  const auto [c0, terms] = parse_xi(xi);
  return Curve::trig(id, std::move(patch), c0, terms, n);
}

void emit(const ExperimentConfig& c, const std::string& file, const std::string& content) {
  const fs::path p = fs::path(c.out_dir) / file;
  write_file(p, content);
  std::cout << "wrote " << p.string() << "\n";
}

void add_patch_opts(CLI::App* sub, PatchOpts& p) {
  sub->add_option("--patch", p.name, "patch name from the configuration (cylinder, plane, sphere, hyperbolic)");
  sub->add_option("--halfwidth", p.halfwidth, "override the band halfwidth r");
}

FamilySpec family_spec(const std::string& id, double amplitude, const std::string& modes, double alpha) {
  FamilySpec f;
  f.id = family_id_from_string(id);
  f.amplitude = amplitude;
  f.alpha = alpha;
  if (!modes.empty()) {
    const auto colon = modes.find(':');
    try {
      if (colon == std::string::npos) {
        f.mode_min = f.mode_max = std::stoi(modes);
      } else {
        f.mode_min = std::stoi(modes.substr(0, colon));
        f.mode_max = std::stoi(modes.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw InvalidInput("--modes expects m or a:b");
    }
  }
  return f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lagbound: curve-level checks for Lagrangian graphs over Fermi patches"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config, "JSON experiment configuration");
  app.add_option("--out", g.out, "output directory");
  app.add_option("--tol", g.tol, "tolerance override for every lemma check");
  app.add_option("--seed", g.seed, "random seed for suite generation");
  app.add_option("--grid", g.grid, "warp grid as <n_s>x<n_t>");

  int exit_code = 0;

  // patch
  auto* patch = app.add_subcommand("patch", "solve the warp field and run the Taylor check");
  PatchOpts po;
  add_patch_opts(patch, po);
  patch->callback([&] {
    const auto c = resolve(g);
    const PatchPtr p = make_patch(c, po);
    std::ostringstream os;
    write_warp_csv(*p, os);
    emit(c, "patch_" + po.name + ".csv", os.str());
    CsvTable t({"s", "c0", "c1", "c2", "coefficient_error", "order"}, "patch=" + po.name);
    for (double frac : {0.0, 0.25, 0.5, 0.75}) {
      const TaylorCheck tc = warp_taylor_check(*p, frac * p->length());
      t.cell(tc.s).cell(tc.c0).cell(tc.c1).cell(tc.c2).cell(tc.coefficient_error).cell(tc.order);
      t.end_row();
      std::printf("s=%.6g order=%.6g coefficient_error=%.3g\n", tc.s, tc.order, tc.coefficient_error);
    }
    std::printf("min w=%.6g band area=%.12g\n", p->min_warp(), band_area(*p));
    emit(c, "taylor_" + po.name + ".csv", t.str());
  });

  // curvature
  auto* curv = app.add_subcommand("curvature", "sup norm of the graph curvature");
  std::string xi = "0;1:1";
  int samples = 512;
  PatchOpts pc;
  curv->add_option("--xi", xi, "curve spec c0;a:m[:phase];...");
  curv->add_option("--samples", samples);
  add_patch_opts(curv, pc);
  curv->callback([&] {
    const auto c = resolve(g);
    const Curve cu = make_curve("xi", xi, make_patch(c, pc), samples);
    const CurvatureReport r = geodesic_curvature(cu);
    std::printf("sup|B|=%.17g at s=%.6g error=%.3g\n", r.sup_norm, r.argmax_s, r.error_estimate);
    CsvTable t({"s", "abs_curvature"}, "sup=" + fmt_double(r.sup_norm));
    for (size_t i = 0; i < r.s.size(); ++i) t.cell(r.s[i]).cell(r.pointwise[i]), t.end_row();
    emit(c, "curvature.csv", t.str());
  });

  // tameness
  auto* tame = app.add_subcommand("tameness", "tameness constant of a graph");
  PatchOpts pt;
  int tsamples = 256;
  tame->add_option("--xi", xi);
  tame->add_option("--samples", tsamples);
  add_patch_opts(tame, pt);
  tame->callback([&] {
    const auto c = resolve(g);
    const Curve cu = make_curve("xi", xi, make_patch(c, pt), tsamples);
    const TamenessReport r = tameness(cu);
    std::printf("epsilon=%.12g long_range=%.12g short_range=%.12g error=%.3g pair=(%.6g, %.6g)\n", r.epsilon, r.long_range,
                r.short_range, r.error_estimate, r.s, r.s2);
    CsvTable t({"epsilon", "long_range", "short_range", "s", "s2", "d_ambient", "d_intrinsic", "delta_min", "error"});
    t.cell(r.epsilon).cell(r.long_range).cell(r.short_range).cell(r.s).cell(r.s2).cell(r.pair_d_ambient);
    t.cell(r.pair_d_intrinsic).cell(r.delta_min).cell(r.error_estimate);
    t.end_row();
    emit(c, "tameness.csv", t.str());
  });

  // hausdorff
  auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two graphs");
  std::string xi2 = "0";
  PatchOpts ph;
  haus->add_option("--xi", xi);
  haus->add_option("--xi2", xi2);
  haus->add_option("--samples", samples);
  add_patch_opts(haus, ph);
  haus->callback([&] {
    const auto c = resolve(g);
    const PatchPtr p = make_patch(c, ph);
    const HausdorffResult r = hausdorff_distance(make_curve("a", xi, p, samples), make_curve("b", xi2, p, samples));
    std::printf("delta_H=%.12g (a->b %.12g, b->a %.12g) error_bound=%.3g\n", r.value, r.ab, r.ba, r.error_bound);
    CsvTable t({"value", "ab", "ba", "witness_s", "witness_t", "error_bound"});
    const PatchPoint w = r.ab >= r.ba ? r.witness_a : r.witness_b;
    t.cell(r.value).cell(r.ab).cell(r.ba).cell(w.s).cell(w.t).cell(r.error_bound);
    t.end_row();
    emit(c, "hausdorff.csv", t.str());
  });

  // exactify
  auto* exa = app.add_subcommand("exactify", "shift a graph to zero area");
  PatchOpts pe;
  exa->add_option("--xi", xi);
  exa->add_option("--samples", samples);
  add_patch_opts(exa, pe);
  exa->callback([&] {
    const auto c = resolve(g);
    const Curve cu = make_curve("xi", xi, make_patch(c, pe), samples);
    const double shift = solve_c(cu, 1.0);
    const Curve ex = cu.affine(1.0, shift, "exact");
    std::printf("c=%.17g area before=%.3g after=%.3g\n", shift, area_functional(cu), area_functional(ex));
    CsvTable t({"s", "xi"}, "c=" + fmt_double(shift));
    for (int i = 0; i < ex.size(); ++i) t.cell(ex.s_at(i)).cell(ex.value(i)), t.end_row();
    emit(c, "exactify.csv", t.str());
  });

  // contract
  auto* con = app.add_subcommand("contract", "contraction path alpha xi + c(alpha)");
  PatchOpts pk;
  int n_alpha = 101;
  con->add_option("--xi", xi);
  con->add_option("--samples", samples);
  con->add_option("--alphas", n_alpha);
  add_patch_opts(con, pk);
  con->callback([&] {
    const auto c = resolve(g);
    const ContractionPath path = build_contraction(make_curve("xi", xi, make_patch(c, pk), samples), n_alpha);
    const ContractionInvariants inv = check_invariants(path);
    CsvTable t({"alpha", "c", "area", "curvature"});
    for (size_t k = 0; k < path.alpha.size(); ++k) {
      t.cell(path.alpha[k]).cell(path.c[k]).cell(area_functional(path.curves[k]));
      t.cell(geodesic_curvature(path.curves[k], false).sup_norm);
      t.end_row();
    }
    std::printf("invariants %s: residual=%.3g bound_margin=%.3g lipschitz_margin=%.3g\n", inv.all() ? "hold" : "FAIL",
                inv.max_root_residual, inv.worst_bound_margin, inv.worst_lipschitz_margin);
    emit(c, "contract.csv", t.str());
    if (!inv.all()) exit_code = 1;
  });

  // sasaki
  auto* sas = app.add_subcommand("sasaki", "Sasaki geodesics and gradient-graph monotonicity");
  std::string base_name = "flat_torus", graph = "torus_cos";
  double eps = 0.1, horizon = 10.0, step = 0.005;
  int trajectories = 5;
  sas->add_option("--base", base_name, "flat_torus or round_sphere");
  sas->add_option("--graph", graph, "torus_cos, torus_mixed, sphere_harmonic1, sphere_cubic");
  sas->add_option("--eps", eps);
  sas->add_option("--horizon", horizon);
  sas->add_option("--step", step);
  sas->add_option("--trajectories", trajectories);
  sas->callback([&] {
    const auto c = resolve(g);
    const BaseManifold2D base(base_kind_from_string(base_name));
    std::mt19937_64 rng(c.seed);
    auto u = [&rng] { return 2 * unit_uniform(rng) - 1; };
    CsvTable t({"trajectory", "t", "chart", "x1", "x2", "Y1", "Y2", "Y2norm"});
    CsvTable fits({"trajectory", "c0", "c1", "c2", "z2", "residual", "leading_error"});
    for (int k = 0; k < trajectories; ++k) {
      const SasakiState s = make_state(base, {u() * 3, u() * 3, u()}, {u(), u()}, {u(), u()}, {u(), u()});
      const Trajectory tr = sasaki_geodesic(base, s, horizon, step, 1e-6);
      const ParabolaFit f = parabola_check(base, tr);
      const size_t every = std::max<size_t>(1, tr.samples.size() / 200);
      for (size_t i = 0; i < tr.samples.size(); i += every) {
        const auto& smp = tr.samples[i];
        t.cell(k).cell(smp.t).cell(smp.state.chart).cell(smp.state.x(0)).cell(smp.state.x(1));
        t.cell(smp.state.Y(0)).cell(smp.state.Y(1)).cell(smp.y2);
        t.end_row();
      }
      fits.cell(k).cell(f.c0).cell(f.c1).cell(f.c2).cell(tr.samples.front().z2).cell(f.max_residual).cell(f.leading_error);
      fits.end_row();
      std::printf("trajectory %d: residual=%.3g leading_error=%.3g switches=%d\n", k, f.max_residual, f.leading_error,
                  tr.chart_switches);
    }
    emit(c, "sasaki_trajectories.csv", t.str());
    emit(c, "sasaki_parabola.csv", fits.str());
    GradientGraph gg;
    if (graph == "torus_cos") gg = torus_cos(eps);
    else if (graph == "torus_mixed") gg = torus_mixed(eps);
    else if (graph == "sphere_harmonic1") gg = sphere_harmonic1(eps);
    else if (graph == "sphere_cubic") gg = sphere_cubic(eps);
    else throw InvalidInput("unknown graph '" + graph + "'");
    if (gg.base != base.kind()) throw InvalidInput("graph '" + graph + "' lives on " + to_string(gg.base));
    const MonotonicityReport m = monotonicity_sweep(base, gg, 24, 720, 1e-8);
    CsvTable mt({"t", "sup_B"}, "graph=" + graph + ",eps=" + fmt_double(eps));
    for (size_t i = 0; i < m.t.size(); ++i) mt.cell(m.t[i]).cell(m.sup[i]), mt.end_row();
    std::printf("monotone=%s worst_drop=%.3g sup(1)=%.12g\n", m.monotone ? "yes" : "no", m.worst_drop, m.sup.back());
    emit(c, "sasaki_monotonicity.csv", mt.str());
  });

  // classify
  auto* cls = app.add_subcommand("classify", "decide membership in the level-k class (exit 0 true, 1 false, 2 indeterminate)");
  double k = 1.0;
  PatchOpts pcl;
  pcl.halfwidth = std::numbers::pi;
  cls->add_option("--xi", xi);
  cls->add_option("--k", k)->required();
  cls->add_option("--samples", samples);
  add_patch_opts(cls, pcl);
  cls->callback([&] {
    const auto c = resolve(g);
    const Curve cu = make_curve("xi", xi, make_patch(c, pcl), samples);
    const MembershipVerdict v = classify(cu, k);
    std::printf("verdict=%s k=%g curvature:%s(margin %.6g) tame:%s(margin %.6g) containment:%s(margin %.6g) exact=%s\n",
                to_string(v.verdict).c_str(), k, to_string(v.curvature.state).c_str(), v.curvature.margin,
                v.tame.evaluated ? to_string(v.tame.state).c_str() : "skipped", v.tame.margin,
                to_string(v.containment.state).c_str(), v.containment.margin, v.exact ? "yes" : "no");
    CsvTable t({"xi", "k", "curvature_margin", "curvature_error", "tame_margin", "tame_error", "containment_margin",
                "exact", "verdict"});
    t.cell(xi).cell(k).cell(v.curvature.margin).cell(v.curvature.error);
    if (v.tame.evaluated)
      t.cell(v.tame.margin).cell(v.tame.error);
    else
      t.cell(std::string()).cell(std::string());
    t.cell(v.containment.margin).cell(v.exact).cell(to_string(v.verdict));
    t.end_row();
    emit(c, "classify.csv", t.str());
    exit_code = v.verdict == Tri::yes ? 0 : v.verdict == Tri::no ? 1 : 2;
  });

  // family
  auto* fam = app.add_subcommand("family", "generate a named family and tabulate its statistics");
  std::string family_id = "escape_cos", modes;
  double amplitude = 1.0, alpha = 0.5;
  fam->add_option("--family", family_id, "escape_cos, hs_family, hs_variant_alpha, parallels, plane_circles");
  fam->add_option("--amplitude", amplitude);
  fam->add_option("--modes", modes, "m or a:b");
  fam->add_option("--alpha", alpha);
  fam->callback([&] {
    const auto c = resolve(g);
    const Family f = generate_family(family_spec(family_id, amplitude, modes, alpha));
    if (f.spec.id == FamilyId::hs_family || f.spec.id == FamilyId::hs_variant_alpha) {
      const LadderFit lf = ladder_fit(f);
      CsvTable t({"s", "curvature", "xi_norm", "d1_norm", "hausdorff"},
                 "curvature_slope=" + fmt_double(lf.curvature_slope) + ",xi_slope=" + fmt_double(lf.xi_slope) +
                     ",d1_slope=" + fmt_double(lf.d1_slope));
      for (size_t i = 0; i < lf.s.size(); ++i) {
        t.cell(lf.s[i]).cell(lf.curvature[i]).cell(lf.xi_norm[i]).cell(lf.d1_norm[i]).cell(lf.hausdorff[i]);
        t.end_row();
      }
      std::printf("slopes: curvature %.4f, |xi| %.4f, |xi'| %.4f\n", lf.curvature_slope, lf.xi_slope, lf.d1_slope);
      emit(c, "family_" + family_id + ".csv", t.str());
      return;
    }
    if (f.spec.id == FamilyId::escape_cos) {
      CsvTable t({"member", "mode", "curvature", "epsilon", "hausdorff", "first_level"});
      for (size_t i = 0; i < f.curves.size(); ++i) {
        const CurveInvariants inv = curve_invariants(f.curves[i]);
        int level = 1;
        while (classify(inv, level).verdict != Tri::yes && level < 100000) ++level;
        const double h = hausdorff_distance(f.curves[i], *f.base_curve).value;
        t.cell(f.curves[i].id()).cell(f.parameter[i]).cell(inv.curvature_sup).cell(*inv.epsilon).cell(h).cell(level);
        t.end_row();
        std::printf("%s: |B|=%.12g delta_H=%.6g first level=%d\n", f.curves[i].id().c_str(), inv.curvature_sup, h, level);
      }
      emit(c, "family_escape_cos.csv", t.str());
      return;
    }
    const InvariantKind kind =
        f.spec.id == FamilyId::plane_circles ? InvariantKind::enclosed_area : InvariantKind::liouville_class;
    const SeparationTable st = separation_scan(f.curves, kind);
    CsvTable t({"a", "b", "hausdorff", "invariant_gap"},
               "classes=" + std::to_string(st.classes) + ",a_emp=" + (st.a_emp ? fmt_double(*st.a_emp) : std::string("none")));
    for (const auto& r : st.rows) t.cell(r.a).cell(r.b).cell(r.hausdorff).cell(r.gap), t.end_row();
    std::printf("classes=%d A_emp=%s\n", st.classes, st.a_emp ? fmt_double(*st.a_emp).c_str() : "none");
    emit(c, "family_" + family_id + ".csv", t.str());
  });

  // lemmas
  auto* lem = app.add_subcommand("lemmas", "run the lemma check suite (nonzero exit on any failure)");
  lem->callback([&] {
    const auto c = resolve(g);
    const SuiteResult r = run_lemma_suite(c);
    write_suite(r, c.out_dir);
    for (const auto& l : r.lemmas) {
      int fails = 0;
      for (const auto& row : l.rows) fails += row.pass ? 0 : 1;
      std::printf("%-24s %3zu checks %3d failures\n", l.name.c_str(), l.rows.size(), fails);
      for (const auto& row : l.rows)
        if (!row.pass)
          std::printf("  FAIL %s [%s] value=%.6g bound=%.6g margin=%.3g %s\n", row.check.c_str(), row.case_id.c_str(),
                      row.value, row.bound, row.margin, row.witness.c_str());
    }
    std::printf("bundle: %s\n", c.out_dir.c_str());
    exit_code = r.pass() ? 0 : 1;
  });

  // figure
  auto* fig = app.add_subcommand("figure", "draw a family as SVG with a companion CSV");
  std::string fig_family = "escape_cos", fig_modes = "2:10", output;
  fig->add_option("--family", fig_family);
  fig->add_option("--modes", fig_modes, "m or a:b; escape_cos draws the two end modes");
  fig->add_option("--amplitude", amplitude);
  fig->add_option("--alpha", alpha);
  fig->add_option("--output", output, "SVG path (default <out>/figure_<family>.svg)");
  fig->callback([&] {
    const auto c = resolve(g);
    FamilySpec spec = family_spec(fig_family, amplitude, fig_modes, alpha);
    const fs::path path = output.empty() ? fs::path(c.out_dir) / ("figure_" + fig_family + ".svg") : fs::path(output);
    FigureResult r;
    if (spec.id == FamilyId::escape_cos && spec.mode_max > spec.mode_min) {
      // Two panels: the end modes.
      Family f;
      FamilySpec lo = spec, hi = spec;
      lo.mode_max = lo.mode_min;
      hi.mode_min = hi.mode_max;
      f = generate_family(lo);
      Family f2 = generate_family(hi);
      f.curves.push_back(f2.curves.front());
      f.parameter.push_back(f2.parameter.front());
      r = render_family(f);
      write_file(path, r.svg);
      fs::path csv = path;
      write_file(csv.replace_extension(".csv"), r.csv);
    } else {
      r = run_figure(spec, path);
    }
    for (const auto& row : r.rows) std::printf("%s: |B|=%.12g delta_H=%.6g\n", row.member.c_str(), row.curvature, row.hausdorff);
    std::cout << "wrote " << path.string() << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return exit_code;
}
