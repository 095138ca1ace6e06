#pragma once

#include <string>
#include <vector>

#include "lagbound/distance.hpp"
#include "lagbound/surface_geom.hpp"

namespace lagbound {

struct XiFunctions {
  Fn1 value;
  Fn1 d1;
  Fn1 d2;
};

// amp * cos(2 pi mode s / length + phase)
struct TrigTerm {
  double amp = 0.0;
  int mode = 1;
  double phase = 0.0;
};

XiFunctions trig_polynomial(double length, double c0, const std::vector<TrigTerm>& terms);

// Graph xi over the base curve of a patch, sampled at n equally spaced s.
class Curve {
 public:
  Curve(std::string id, PatchPtr patch, XiFunctions xi, int n);

  static Curve trig(std::string id, PatchPtr patch, double c0, const std::vector<TrigTerm>& terms, int n);
  static Curve constant(std::string id, PatchPtr patch, double c, int n);
  // Equally spaced samples over [0, length); derivatives by trigonometric interpolation.
  static Curve from_samples(std::string id, PatchPtr patch, std::vector<double> values);

  const std::string& id() const { return id_; }
  const SurfacePatch& patch() const { return *patch_; }
  const PatchPtr& patch_ptr() const { return patch_; }
  const XiFunctions& functions() const { return xi_; }
  int size() const { return n_; }
  double spacing() const { return patch_->length() / n_; }
  double s_at(int i) const { return i * spacing(); }

  double xi(double s) const { return xi_.value(s); }
  double d1(double s) const { return xi_.d1(s); }
  double d2(double s) const { return xi_.d2(s); }
  double value(int i) const { return v_[i]; }
  double slope(int i) const { return d1_[i]; }
  double bend(int i) const { return d2_[i]; }
  PatchPoint point(int i) const { return {s_at(i), v_[i]}; }
  std::vector<PatchPoint> points() const;

  double sup_abs() const;     // max |xi| over samples
  double sup_abs_d1() const;  // max |xi'|
  double mean() const;

  // alpha * xi + c
  Curve affine(double alpha, double c, std::string id) const;
  Curve resampled(int n) const;

 private:
  std::string id_;
  PatchPtr patch_;
  XiFunctions xi_;
  int n_;
  std::vector<double> v_, d1_, d2_;
};

}  // namespace lagbound
