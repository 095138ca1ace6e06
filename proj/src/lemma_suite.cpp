#include "lagbound/lemma_suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "lagbound/config.hpp"
#include "lagbound/curve_metrics.hpp"
#include "lagbound/errors.hpp"
#include "lagbound/exactness.hpp"
#include "lagbound/hausdorff.hpp"
#include "lagbound/numeric.hpp"
#include "lagbound/report.hpp"
#include "lagbound/sasaki.hpp"

namespace lagbound {

const std::vector<std::string>& lemma_names() {
  static const std::vector<std::string> names{
      "jacobi_taylor",   "shift_contract",     "contraction_curvature", "contraction_tameness",
      "graph_tameness",  "graph_monotonicity", "sasaki_parabola",       "tameness_comparison",
      "radial_identity", "contraction_hausdorff"};
  return names;
}

double default_tolerance(const std::string& lemma) {
  static const std::map<std::string, double> t{{"jacobi_taylor", 1e-8},        {"shift_contract", 1e-12},
                                               {"contraction_curvature", 1e-6}, {"contraction_tameness", 5e-3},
                                               {"graph_tameness", 1e-9},       {"graph_monotonicity", 1e-8},
                                               {"sasaki_parabola", 1e-6},      {"tameness_comparison", 5e-3},
                                               {"radial_identity", 0.0},       {"contraction_hausdorff", 0.0}};
  const auto it = t.find(lemma);
  if (it == t.end()) throw InvalidInput("unknown lemma check '" + lemma + "'");
  return it->second;
}

void LemmaReport::at_most(std::string check, std::string case_id, double value, double bound, std::string witness) {
  const double m = bound + tol - value;
  rows.push_back({std::move(check), std::move(case_id), value, bound, m, m >= 0, std::move(witness)});
}

void LemmaReport::at_least(std::string check, std::string case_id, double value, double bound, std::string witness) {
  const double m = value - (bound - tol);
  rows.push_back({std::move(check), std::move(case_id), value, bound, m, m >= 0, std::move(witness)});
}

bool LemmaReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

bool SuiteResult::pass() const {
  return std::all_of(lemmas.begin(), lemmas.end(), [](const LemmaReport& l) { return l.pass(); });
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Curve random_graph(std::mt19937_64& rng, PatchPtr patch, double max_norm, int max_mode, std::string id, int n) {
  const int terms = 1 + static_cast<int>(unit_uniform(rng) * 3);
  std::vector<TrigTerm> t;
  double total = 0.0;
  for (int k = 0; k < terms; ++k) {
    const int mode = 1 + static_cast<int>(unit_uniform(rng) * max_mode);
    const double a = 0.2 + 0.8 * unit_uniform(rng);
    t.push_back({a, mode, 2 * std::numbers::pi * unit_uniform(rng)});
    total += a;
  }
  const double c0 = 0.2 * (2 * unit_uniform(rng) - 1);
  total += std::abs(c0);
  const double scale = max_norm * (0.5 + 0.5 * unit_uniform(rng)) / total;
  for (auto& term : t) term.amp *= scale;
  return Curve::trig(std::move(id), std::move(patch), c0 * scale, t, n);
}

namespace {

std::string kv(const std::string& k, double v) { return k + "=" + fmt_double(v); }

class Suite {
 public:
  explicit Suite(const ExperimentConfig& cfg) : cfg_(cfg) {}

  PatchPtr patch(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    PatchPtr p = build_patch(cfg_.patches.at(name), cfg_.grid);
    cache_.emplace(name, p);
    return p;
  }

  double tol(const std::string& lemma) const {
    if (cfg_.tol_override) return *cfg_.tol_override;
    const auto& t = cfg_.lemmas.at(lemma);
    return t.tol ? *t.tol : default_tolerance(lemma);
  }

  // Each lemma draws from its own stream so that toggling one leaves the others unchanged.
  std::mt19937_64 stream(const std::string& lemma) const {
    std::uint32_t h = 2166136261u;  // FNV-1a
    for (unsigned char c : lemma) h = (h ^ c) * 16777619u;
    std::seed_seq seq{static_cast<std::uint32_t>(cfg_.seed), static_cast<std::uint32_t>(cfg_.seed >> 32), h};
    return std::mt19937_64(seq);
  }

  void jacobi_taylor(LemmaReport& r) {
    for (const char* name : {"cylinder", "plane", "sphere", "hyperbolic"}) {
      const PatchPtr p = patch(name);
      for (double frac : {0.05, 0.27}) {
        const double s = frac * p->length();
        const TaylorCheck tc = warp_taylor_check(*p, s);
        const std::string w = kv("s", s);
        r.at_least("order", name, tc.order, 2.9, w);
        r.at_most("coefficients", name, tc.coefficient_error, 0.0, w);
      }
    }
  }

  void shift_contract(LemmaReport& r) {
    auto rng = stream(r.name);
    for (const char* name : {"cylinder", "plane", "sphere"}) {
      const PatchPtr p = patch(name);
      for (int k = 0; k < 2; ++k) {
        Curve xi = random_graph(rng, p, p->halfwidth() / 4, 8, std::string(name) + "#" + std::to_string(k), 256);
        if (k == 1) xi = exactify(xi);
        const ContractionPath path = build_contraction(xi, 21);
        const ContractionInvariants inv = check_invariants(path);
        const std::string id = xi.id();
        const std::string w = kv("norm", path.xi_norm) + ";" + kv("c1", path.c.back());
        r.at_most("root_residual", id, inv.max_root_residual, 0.0, w);
        r.at_least("c_bound", id, inv.worst_bound_margin, 0.0, w);
        r.at_least("c_lipschitz", id, inv.worst_lipschitz_margin, 0.0, w);
        r.at_most("c0", id, std::abs(path.c.front()), 0.0, w);
        if (path.xi_exact) r.at_most("c1", id, std::abs(path.c.back()), 0.0, w);
        r.at_least("in_patch", id, inv.in_patch ? 1.0 : 0.0, 1.0, w);
      }
    }
  }

  void contraction_curvature(LemmaReport& r) {
    auto rng = stream(r.name);
    for (const char* name : {"cylinder", "plane", "sphere"}) {
      const PatchPtr p = patch(name);
      const double k = geodesic_curvature(Curve::constant("zero", p, 0.0, 64), false).sup_norm;
      for (int j = 0; j < 2; ++j) {
        const Curve xi = exactify(random_graph(rng, p, 0.05, 8, std::string(name) + "#" + std::to_string(j), 256));
        const ContractionPath path = build_contraction(xi, 11);
        ContractionBoundsOptions opt;
        opt.check_tameness = false;
        const ContractionBounds b = contraction_bounds_check(path, k, k + 0.1, opt);
        r.at_most("max_curvature", xi.id(), b.max_curvature, std::max(k + 0.1, b.curvature.back()),
                  kv("alpha", b.argmax_alpha));
      }
    }
  }

  void contraction_tameness(LemmaReport& r) {
    auto rng = stream(r.name);
    for (const char* name : {"cylinder", "sphere"}) {
      const PatchPtr p = patch(name);
      const int count = std::string(name) == "cylinder" ? 2 : 1;
      for (int j = 0; j < count; ++j) {
        const Curve xi = exactify(random_graph(rng, p, 0.05, 8, std::string(name) + "#" + std::to_string(j), 128));
        const ContractionPath path = build_contraction(xi, 5);
        ContractionBoundsOptions opt;
        opt.epsilon_tol = 0.0;
        TamenessOptions topt;
        topt.estimate_error = false;
        const ContractionBounds b = contraction_bounds_check(path, 0.0, 0.0, opt, topt);
        r.at_least("min_epsilon", xi.id(), b.min_epsilon, std::min(b.eps0, b.eps1), kv("alpha", b.argmin_alpha));
      }
    }
    // Scaling toward the zero section.
    const PatchPtr cyl = patch("cylinder");
    const Curve base = random_graph(rng, cyl, 1.0, 4, "limit", 256);
    double prev = -1.0;
    for (double a : {0.4, 0.2, 0.1, 0.05, 0.025}) {
      const Curve c = base.affine(a, 0.0, "a=" + fmt_double(a));
      TamenessOptions topt;
      topt.estimate_error = false;
      const double eps = tameness(c, topt).epsilon;
      if (prev >= 0) r.at_least("limit_monotone", c.id(), eps, prev, kv("previous", prev));
      prev = eps;
      const ArcSandwich sw = arc_sandwich_check(c, 48, 0.0);
      const std::string w = kv("stretch", sw.stretch) + ";" + kv("pairs", sw.pairs);
      r.at_least("arc_lower", c.id(), sw.worst_lower, 0.0, w);
      r.at_least("arc_upper", c.id(), sw.worst_upper, 0.0, w);
    }
  }

  void graph_tameness(LemmaReport& r) {
    for (auto make : {&torus_cos, &torus_mixed, &sphere_cubic}) {
      double prev = -1.0;
      for (double a : {0.4, 0.2, 0.1, 0.05, 0.025}) {
        const GradientGraph g = make(a);
        const BaseManifold2D base(g.base);
        const GraphTamenessResult t = graph_tameness_bounds(base, g, 6, 0.0);
        const std::string id = g.name + "@" + fmt_double(a);
        const std::string w = kv("grad", t.max_grad_xi) + ";" + kv("pairs", t.pairs);
        r.at_least("lower", id, t.worst_lower, 0.0, w);
        r.at_least("upper", id, t.worst_upper, 0.0, w);
        if (t.projection_evaluated) {
          r.at_least("projection", id, t.worst_projection, 0.0, w);
          r.at_least("epsilon", id, t.epsilon_estimate, t.implied_epsilon, w);
          if (prev >= 0) r.at_least("limit_monotone", id, t.epsilon_estimate, prev, kv("previous", prev));
          prev = t.epsilon_estimate;
        }
      }
    }
  }

  void graph_monotonicity(LemmaReport& r) {
    for (auto make : {&torus_cos, &torus_mixed, &sphere_harmonic1, &sphere_cubic}) {
      for (double e : {0.2, 0.1, 0.05}) {
        const GradientGraph g = make(e);
        const BaseManifold2D base(g.base);
        const MonotonicityReport m = monotonicity_sweep(base, g, 12, 720, tol(r.name));
        const std::string id = g.name + "@" + fmt_double(e);
        r.at_most("sup_drop", id, m.worst_drop, 0.0, kv("sup1", m.sup.back()));
        const FrameCheck fc = frame_consistency(base, g, 8);
        r.at_most("frame", id, std::max({fc.tangent_error, fc.normal_error, fc.adjoint_error}), 0.0,
                  kv("symmetry", fc.symmetry_error));
      }
    }
  }

  void sasaki_parabola(LemmaReport& r) {
    auto rng = stream(r.name);
    auto u = [&rng] { return 2 * unit_uniform(rng) - 1; };
    for (BaseKind kind : {BaseKind::flat_torus, BaseKind::round_sphere}) {
      const BaseManifold2D base(kind);
      for (int k = 0; k < 5; ++k) {
        const Vec3d p(u() * 3, u() * 3, u());
        const SasakiState s = make_state(base, p, {u(), u()}, {u(), u()}, {u(), u()});
        const Trajectory tr = sasaki_geodesic(base, s, 10.0, 0.005, 1e-6);
        const ParabolaFit f = parabola_check(base, tr);
        const std::string id = to_string(kind) + "#" + std::to_string(k);
        r.at_most("residual", id, f.max_residual, 0.0, kv("c2", f.c2));
        r.at_most("leading", id, f.leading_error, 0.0, kv("z2", tr.samples.front().z2));
        r.at_most("z2_drift", id, f.z2_drift, 0.0, kv("z2", tr.samples.front().z2));
      }
    }
  }

  void tameness_comparison(LemmaReport& r) {
    auto rng = stream(r.name);
    const PatchPtr cyl = patch("cylinder");
    const Curve xi = random_graph(rng, cyl, 0.3, 4, "cmp", 128);
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
        {"collar", ConformalFactor::from([](double, double t) { return 0.05 * t * t; },
                                         [](double, double) { return 0.0; },
                                         [](double, double t) { return 0.1 * t; }),
         0.05 * cyl->halfwidth() * cyl->halfwidth()}};
    for (const auto& c : cases) {
      const double C = std::exp(2 * c.phi_max);
      TamenessOptions opt;
      opt.estimate_error = false;
      const ComparisonResult res = tameness_comparison_check(xi, c.cf, C, 0.0, opt);
      r.at_least("epsilon_prime", c.id, res.epsilon_prime, res.epsilon / (C * C), kv("epsilon", res.epsilon));
    }
  }

  void radial_identity(LemmaReport& r) {
    const std::vector<std::pair<double, double>> ts{{0.2, 0.4}, {1.0, 0.0}, {0.6, 0.8}, {0.3, 1.0}, {0.9, 0.5}};
    for (const char* name : {"cylinder", "sphere"}) {
      const PatchPtr p = patch(name);
      const Curve n = Curve::trig(std::string(name) + "_sigma", p, 0.25, {{0.15, 1, 0.0}}, 256);
      for (const RadialRow& row : radial_path_check(n, ts)) {
        r.at_most("residual", name, row.residual, row.tolerance, kv("t", row.t) + ";" + kv("s", row.s));
      }
    }
  }

  void contraction_hausdorff(LemmaReport& r) {
    auto rng = stream(r.name);
    for (const char* name : {"cylinder", "sphere"}) {
      const PatchPtr p = patch(name);
      const Curve xi = exactify(random_graph(rng, p, 0.2, 4, std::string(name) + "#0", 256));
      const PathBoundResult b = contraction_path_bound_check(build_contraction(xi, 5));
      r.at_least("margin", xi.id(), b.worst_margin, 0.0, kv("alpha", b.alpha) + ";" + kv("alpha2", b.alpha2));
    }
  }

 private:
  const ExperimentConfig& cfg_;
  std::map<std::string, PatchPtr> cache_;
};

}  // namespace

SuiteResult run_lemma_suite(const ExperimentConfig& cfg) {
  Suite s(cfg);
  using Fn = void (Suite::*)(LemmaReport&);
  const std::map<std::string, Fn> fns{{"jacobi_taylor", &Suite::jacobi_taylor},
                                      {"shift_contract", &Suite::shift_contract},
                                      {"contraction_curvature", &Suite::contraction_curvature},
                                      {"contraction_tameness", &Suite::contraction_tameness},
                                      {"graph_tameness", &Suite::graph_tameness},
                                      {"graph_monotonicity", &Suite::graph_monotonicity},
                                      {"sasaki_parabola", &Suite::sasaki_parabola},
                                      {"tameness_comparison", &Suite::tameness_comparison},
                                      {"radial_identity", &Suite::radial_identity},
                                      {"contraction_hausdorff", &Suite::contraction_hausdorff}};
  SuiteResult out;
  for (const auto& name : lemma_names()) {
    const auto it = cfg.lemmas.find(name);
    if (it != cfg.lemmas.end() && !it->second.enabled) continue;
    LemmaReport r;
    r.name = name;
    r.tol = s.tol(name);
    (s.*fns.at(name))(r);
    out.lemmas.push_back(std::move(r));
  }
  return out;
}

void write_suite(const SuiteResult& r, const std::filesystem::path& dir) {
  CsvTable summary({"lemma", "checks", "failures", "tol", "pass"});
  for (const auto& l : r.lemmas) {
    CsvTable t({"check", "case", "value", "bound", "margin", "pass", "witness"}, "lemma=" + l.name + ",tol=" + fmt_double(l.tol));
    int fails = 0;
    for (const auto& row : l.rows) {
      t.cell(row.check).cell(row.case_id).cell(row.value).cell(row.bound).cell(row.margin).cell(row.pass).cell(row.witness);
      t.end_row();
      fails += row.pass ? 0 : 1;
    }
    write_file(dir / (l.name + ".csv"), t.str());
    summary.cell(l.name).cell(static_cast<int>(l.rows.size())).cell(fails).cell(l.tol).cell(l.pass());
    summary.end_row();
  }
  write_file(dir / "summary.csv", summary.str());
}

}  // namespace lagbound
