#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lagbound/curve.hpp"

namespace lagbound {

// A(xi) = int_0^l int_0^{xi(s)} w dt ds, trapezoid in s over the exact t-primitive.
double area_functional(const Curve& xi);
double area_functional(const SurfacePatch& patch, std::span<const double> xi_samples);

// Unique c with A(alpha xi + c) = 0, by bisection on [-alpha|xi|, alpha|xi|].
double solve_c(const Curve& xi, double alpha);

struct ContractionPath {
  Curve xi;
  std::vector<double> alpha;
  std::vector<double> c;
  std::vector<Curve> curves;  // graph(alpha xi + c(alpha))
  double xi_norm = 0.0;       // max |xi|
  bool xi_exact = false;      // |A(xi)| <= 1e-12
};

struct ContractionInvariants {
  bool c0_zero = false;
  bool c1_zero = false;            // vacuous unless xi is exact
  bool c_bound = false;            // |c(a)| <= a |xi|
  bool c_lipschitz = false;        // |c(a) - c(a')| <= |xi| |a - a'|
  bool in_patch = false;
  double max_root_residual = 0.0;  // max |A(xi_a)|
  double worst_bound_margin = 0.0;
  double worst_lipschitz_margin = 0.0;
  bool all() const { return c0_zero && c1_zero && c_bound && c_lipschitz && in_patch && max_root_residual <= 1e-12; }
};

// Requires |xi| < r/3.
ContractionPath build_contraction(const Curve& xi, int n_alpha);
ContractionInvariants check_invariants(const ContractionPath& path);

// xi + c(1): the exact graph in the same vertical family.
Curve exactify(const Curve& xi);

struct TamenessOptions;

struct ContractionBounds {
  bool holds = false;
  bool curvature_holds = false;
  bool tameness_holds = false;
  double max_curvature = 0.0;
  double argmax_alpha = 0.0;
  double curvature_bound = 0.0;  // max{k', |B_{xi_1}|} + tol
  double min_epsilon = 1.0;
  double argmin_alpha = 0.0;
  double epsilon_bound = 0.0;    // min{eps_0, eps_1} - tol_eps
  double eps0 = 1.0, eps1 = 1.0;
  std::vector<double> curvature;  // per alpha
  std::vector<double> epsilon;    // per alpha on the tameness sub-grid, NaN elsewhere
};

struct ContractionBoundsOptions {
  double curvature_tol = 1e-6;
  double epsilon_tol = 5e-3;
  int tameness_stride = 1;  // evaluate tameness on every stride-th alpha (ends always)
  bool check_tameness = true;
};

ContractionBounds contraction_bounds_check(const ContractionPath& path, double k, double k_prime,
                                           const ContractionBoundsOptions& opt = {});
ContractionBounds contraction_bounds_check(const ContractionPath& path, double k, double k_prime,
                                           const ContractionBoundsOptions& opt, const TamenessOptions& topt);

enum class InvariantKind { liouville_class, enclosed_area };

struct IsotopyInvariant {
  InvariantKind kind = InvariantKind::liouville_class;
  double value = 0.0;
  std::optional<double> rho;  // enclosed area / 2, plane circles only
};

std::string to_string(InvariantKind k);
InvariantKind invariant_kind_from_string(const std::string& s);

// Cylinder: Liouville class on a flat cylinder patch. Plane: Green area on a plane_circle patch.
IsotopyInvariant isotopy_invariant(const Curve& c, InvariantKind kind);

struct Vec2 {
  double x = 0.0, y = 0.0;
};

// Shoelace area of a closed polygon; throws SelfIntersection on crossing edges.
double polygon_area(std::span<const Vec2> poly);
void require_embedded(std::span<const Vec2> poly);

// Euclidean image of a graph on a plane_circle patch.
std::vector<Vec2> plane_polygon(const Curve& c);

}  // namespace lagbound
