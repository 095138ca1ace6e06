#pragma once

#include <limits>
#include <span>
#include <vector>

#include "lagbound/surface_geom.hpp"

namespace lagbound {

// Conformal change g' = e^{2 phi} g. Derivatives are optional.
struct ConformalFactor {
  Fn2 phi;
  Fn2 phi_s;
  Fn2 phi_t;
  bool identity = true;

  static ConformalFactor none() { return {}; }
  static ConformalFactor constant(double log_lambda);
  static ConformalFactor from(Fn2 phi, Fn2 phi_s = {}, Fn2 phi_t = {});

  double value(double s, double t) const { return identity ? 0.0 : phi(s, t); }
  double ds(double s, double t) const;
  double dt(double s, double t) const;
};

enum class Stencil { n8 = 8, n16 = 16, n32 = 32 };

// Length of the short straight coordinate segment p -> q, midpoint rule.
double local_length(const SurfacePatch& patch, const ConformalFactor& cf, PatchPoint p, PatchPoint q);

class DistanceGrid;

class DistanceField {
 public:
  double at(PatchPoint p) const;
  // Index of the nearest source, or -1 if unreachable.
  int nearest_source(PatchPoint p) const;
  double node(int i, int j) const;
  Stencil stencil() const { return stencil_; }
  double radius() const { return radius_; }
  const std::vector<PatchPoint>& sources() const { return sources_; }
  const DistanceGrid& grid() const { return *grid_; }

 private:
  friend class DistanceGrid;
  const DistanceGrid* grid_ = nullptr;
  std::vector<PatchPoint> sources_;
  std::vector<double> dist_;
  std::vector<int> label_;
  Stencil stencil_ = Stencil::n16;
  double radius_ = std::numeric_limits<double>::infinity();
};

// Subsampled node lattice of a patch carrying the shortest-path graph.
class DistanceGrid {
 public:
  explicit DistanceGrid(PatchPtr patch, int stride = 0, ConformalFactor cf = {});

  const SurfacePatch& patch() const { return *patch_; }
  const PatchPtr& patch_ptr() const { return patch_; }
  const ConformalFactor& conformal() const { return cf_; }
  int n_s() const { return n_s_; }
  int n_t() const { return n_t_; }
  double h_s() const { return h_s_; }
  double h_t() const { return h_t_; }
  double s_at(int i) const { return i * h_s_; }
  double t_at(int j) const { return -patch_->halfwidth() + j * h_t_; }
  // Largest metric length of a single cell edge.
  double cell_size() const { return cell_; }

  DistanceField from(PatchPoint source, Stencil st = Stencil::n16,
                     double radius = std::numeric_limits<double>::infinity()) const;
  DistanceField from_set(std::span<const PatchPoint> sources, Stencil st = Stencil::n16,
                         double radius = std::numeric_limits<double>::infinity()) const;

  // Throws OutOfPatch if p is within one cell of the band edge.
  void require_margin(PatchPoint p) const;

 private:
  friend class DistanceField;
  struct Seed {
    int node;
    double d;
  };
  void block(PatchPoint p, std::vector<int>& nodes) const;

  PatchPtr patch_;
  ConformalFactor cf_;
  int stride_ = 1;
  int n_s_ = 0, n_t_ = 0;
  double h_s_ = 0.0, h_t_ = 0.0, cell_ = 0.0;
  std::vector<double> wf_;  // w * e^phi at nodes
};

struct DistanceEstimate {
  double value = 0.0;
  double error = 0.0;  // |d16 - d8| or 0 for closed forms
};

// Closed form on the flat cylinder (no conformal factor): sqrt(dq_wrap^2 + dp^2).
double cylinder_distance(double length, PatchPoint x, PatchPoint y);

DistanceEstimate ambient_distance_estimate(const DistanceGrid& grid, PatchPoint x, PatchPoint y);
double ambient_distance(const DistanceGrid& grid, PatchPoint x, PatchPoint y);
double ambient_distance(const PatchPtr& patch, PatchPoint x, PatchPoint y);

// True when the closed-form cylinder override applies.
bool closed_form_distance(const SurfacePatch& patch, const ConformalFactor& cf);

}  // namespace lagbound
