#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace lagbound {

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

enum class PatchKind { flat_cylinder, plane_circle, sphere_equator, hyperbolic_band, custom };

std::string to_string(PatchKind k);
PatchKind patch_kind_from_string(const std::string& s);

// Closed base curve: geodesic curvature kappa(s) and ambient Gaussian curvature
// K(s, t) along the normal geodesic through gamma(s).
struct BaseCurve {
  std::string name;
  PatchKind kind = PatchKind::custom;
  double length = 0.0;
  Fn1 kappa;
  Fn2 gauss;
  Fn1 dkappa;     // optional; central differences otherwise
  Fn2 dgauss_ds;  // optional
  bool s_invariant = false;
  double radius = 0.0;  // plane_circle only
};

// Throws InvalidInput on non-periodic or unbounded data.
void validate(const BaseCurve& base);

BaseCurve flat_cylinder_base(double length);
BaseCurve plane_circle_base(double radius);
BaseCurve sphere_equator_base();
BaseCurve hyperbolic_band_base(double length);

struct GridResolution {
  int n_s = 2048;
  int n_t = 513;
};

struct WarpSample {
  double w = 1.0;
  double w_t = 0.0;  // dw/dt
  double w_s = 0.0;  // dw/ds
  double area = 0.0; // int_0^t w
};

struct PatchPoint {
  double s = 0.0;
  double t = 0.0;
};

class SurfacePatch {
 public:
  SurfacePatch(BaseCurve base, double halfwidth, GridResolution grid);

  const BaseCurve& base() const { return base_; }
  PatchKind kind() const { return base_.kind; }
  double length() const { return base_.length; }
  double halfwidth() const { return r_; }
  GridResolution grid() const { return grid_; }
  double h_s() const { return base_.length / grid_.n_s; }
  double h_t() const { return 2.0 * r_ / (grid_.n_t - 1); }
  double s_at(int i) const { return i * h_s(); }
  double t_at(int j) const { return -r_ + j * h_t(); }

  // Grid values, i wraps modulo n_s.
  double w(int i, int j) const;
  double w_t(int i, int j) const;
  double w_s(int i, int j) const;
  double warp_t(int i, int j) const { return 2.0 * w(i, j) * w_t(i, j); }  // d_t w^2
  double warp_s(int i, int j) const { return 2.0 * w(i, j) * w_s(i, j); }  // d_s w^2

  // Hermite interpolation of the stored columns.
  WarpSample sample(double s, double t) const;
  double kappa(double s) const { return base_.kappa(wrap(s)); }
  double gauss(double s, double t) const { return base_.gauss(wrap(s), t); }
  double gauss_abs_max() const { return gauss_abs_max_; }

  // w(s, t) by a fresh fine RK4 column, independent of the grid.
  double warp_direct(double s, double t) const;

  double min_warp() const { return min_warp_; }
  double integration_error() const { return integration_error_; }
  // Largest |w'' + K w| at stored nodes, second differences in t.
  double ode_residual() const;
  double wrap(double s) const;
  bool contains(double t, double margin) const { return t >= -r_ + margin && t <= r_ - margin; }
  bool stored_single_column() const { return cols_ == 1; }

 private:
  struct Column {
    std::vector<double> w, wt, wtt, u, ut, utt, P, Ps;
  };
  void integrate_column(double s, Column& c, int substeps) const;
  const Column& col(int i) const;

  BaseCurve base_;
  double r_;
  GridResolution grid_;
  int cols_ = 0;
  std::vector<Column> columns_;
  double min_warp_ = 0.0;
  double integration_error_ = 0.0;
  double gauss_abs_max_ = 0.0;
};

using PatchPtr = std::shared_ptr<const SurfacePatch>;

PatchPtr solve_warp(const BaseCurve& base, double r, GridResolution grid = {});

struct TaylorCheck {
  double s = 0.0;
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;     // fitted
  double e0 = 1.0, e1 = 0.0, e2 = 0.0;     // 1, -2 kappa, kappa^2 - K
  double coefficient_error = 0.0;          // max |fitted - expected|
  double order = 0.0;                      // log-log slope; +inf if remainder vanishes
  bool remainder_exact = false;
  int fit_points = 0;
};

TaylorCheck warp_taylor_check(const SurfacePatch& patch, double s);

// Density of the area form in patch coordinates.
Fn2 area_form(const SurfacePatch& patch);
// Symplectic area of the whole band.
double band_area(const SurfacePatch& patch);

// Grid CSV with header "# schema=1,length=..,halfwidth=..,n_s=..,n_t=..".
void write_warp_csv(const SurfacePatch& patch, std::ostream& out);

}  // namespace lagbound
