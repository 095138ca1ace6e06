#pragma once

#include <vector>

#include "lagbound/curve.hpp"
#include "lagbound/exactness.hpp"

namespace lagbound {

struct HausdorffResult {
  double value = 0.0;
  double ab = 0.0;  // s(A;B) = max_a min_b d(a, b)
  double ba = 0.0;
  PatchPoint witness_a, witness_a_near;  // attains s(A;B)
  PatchPoint witness_b, witness_b_near;  // attains s(B;A)
  double spacing = 0.0;                  // max metric distance between consecutive samples
  double field_error = 0.0;              // 8 vs 16 stencil, 0 for closed forms
  double error_bound = 0.0;              // spacing + field_error
  bool closed_form = false;
};

struct HausdorffOptions {
  Stencil stencil = Stencil::n16;
  int distance_stride = 0;
  bool estimate_error = true;
};

HausdorffResult hausdorff_distance(const Curve& a, const Curve& b, const HausdorffOptions& opt = {});
HausdorffResult hausdorff_distance(const DistanceGrid& grid, const Curve& a, const Curve& b,
                                   const HausdorffOptions& opt = {});

struct RadialRow {
  double t = 0.0, s = 0.0;
  double value = 0.0;      // delta_H(t N', s N')
  double predicted = 0.0;  // |t - s| max|sigma|
  double residual = 0.0;
  double tolerance = 0.0;  // 2 (spacing + field error)
  bool ok = false;
};

// N is the section sigma as a graph; tN' is graph(t sigma).
std::vector<RadialRow> radial_path_check(const Curve& n, const std::vector<std::pair<double, double>>& ts,
                                         const HausdorffOptions& opt = {});

struct PathBoundResult {
  bool holds = true;
  double worst_margin = 0.0;  // min over pairs of bound + tol - delta_H
  double alpha = 0.0, alpha2 = 0.0;
  double delta = 0.0;
  int pairs = 0;
};

// delta_H(graph xi_a, graph xi_a') <= 2 |a - a'| max|xi| + tolerance on all grid pairs.
PathBoundResult contraction_path_bound_check(const ContractionPath& path, const HausdorffOptions& opt = {});

}  // namespace lagbound
