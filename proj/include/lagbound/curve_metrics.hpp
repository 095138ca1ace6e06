#pragma once

#include <optional>
#include <vector>

#include "lagbound/curve.hpp"

namespace lagbound {

struct CurvatureReport {
  std::vector<double> s;
  std::vector<double> pointwise;  // |B| at samples
  double sup_norm = 0.0;
  double argmax_s = 0.0;
  double error_estimate = 0.0;  // |sup(n) - sup(2n)| with a rounding floor
};

// Signed geodesic curvature of the graph with respect to J(Gamma'), at one point.
double graph_curvature_signed(const SurfacePatch& patch, double s, double xi, double d1, double d2);
// Same under g' = e^{2 phi} g.
double graph_curvature_signed(const SurfacePatch& patch, const ConformalFactor& cf, double s, double xi, double d1,
                              double d2);
double graph_curvature(const Curve& c, double s);

CurvatureReport geodesic_curvature(const Curve& c, bool estimate_error = true);
// sup |B| under a conformal factor (sampled and refined).
double curvature_sup(const Curve& c, const ConformalFactor& cf);

// Shorter of the two arcs between s and s2, adaptive quadrature.
double intrinsic_distance(const Curve& c, double s, double s2, const ConformalFactor& cf = {});
// Length of the arc from s to s + delta (delta >= 0).
double arc_length(const Curve& c, double s, double delta, const ConformalFactor& cf = {});

struct ArcSandwich {
  bool holds = false;
  double worst_lower = 0.0;  // min of d_xi - w_min d_L
  double worst_upper = 0.0;  // min of stretch d_L - d_xi
  double stretch = 1.0;      // sqrt(w_max^2 + max xi'^2); sqrt(1 + max xi'^2) on the flat cylinder
  double w_min = 1.0;
  int pairs = 0;
};

// Intrinsic distance on the graph against the base arc, over all pairs of m equally spaced points.
ArcSandwich arc_sandwich_check(const Curve& c, int m = 48, double tol = 1e-9);

struct TamenessOptions {
  std::optional<double> delta_min;  // default min(0.05, 1/(4|B|+1))
  Stencil stencil = Stencil::n16;
  int distance_stride = 0;          // 0: automatic
  ConformalFactor conformal;
  bool estimate_error = true;
};

struct TamenessReport {
  double epsilon = 1.0;
  double long_range = 1.0;          // sampled infimum over pairs with d_xi >= delta_min
  double short_range = 1.0;         // chord-arc bound
  double s = 0.0, s2 = 0.0;         // attained pair of the long-range scan
  double pair_d_ambient = 0.0;
  double pair_d_intrinsic = 0.0;
  double delta_min = 0.0;
  double curvature_sup = 0.0;
  double distortion = 0.0;          // sup|K| delta^2 / 6
  bool short_range_attained = false;
  bool closed_form = false;         // flat cylinder override used
  double error_estimate = 0.0;
};

TamenessReport tameness(const Curve& c, const TamenessOptions& opt = {});

// Largest |Gaussian curvature| of e^{2 phi} g over the distance grid nodes.
double conformal_gauss_abs_max(const DistanceGrid& grid);

struct ComparisonResult {
  bool holds = false;
  double epsilon = 0.0;        // in g
  double epsilon_prime = 0.0;  // in g'
  double bound = 0.0;          // C^{-2} epsilon - tol
  double C = 1.0;
  double tolerance = 0.0;
};

ComparisonResult tameness_comparison_check(const Curve& c, const ConformalFactor& cf, double C, double tol = 5e-3,
                                           TamenessOptions opt = {});

}  // namespace lagbound
