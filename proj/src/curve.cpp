#include "lagbound/curve.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "lagbound/errors.hpp"

namespace lagbound {

XiFunctions trig_polynomial(double length, double c0, const std::vector<TrigTerm>& terms) {
  const double base = 2 * std::numbers::pi / length;
  auto eval = [base, c0, terms](double s, int order) {
    double acc = order == 0 ? c0 : 0.0;
    for (const auto& tt : terms) {
      const double om = base * tt.mode;
      const double x = om * s + tt.phase;
      switch (order) {
        case 0: acc += tt.amp * std::cos(x); break;
        case 1: acc -= tt.amp * om * std::sin(x); break;
        default: acc -= tt.amp * om * om * std::cos(x); break;
      }
    }
    return acc;
  };
  return {[eval](double s) { return eval(s, 0); }, [eval](double s) { return eval(s, 1); },
          [eval](double s) { return eval(s, 2); }};
}

Curve::Curve(std::string id, PatchPtr patch, XiFunctions xi, int n)
    : id_(std::move(id)), patch_(std::move(patch)), xi_(std::move(xi)), n_(n) {
  if (!patch_) throw InvalidInput("curve without patch");
  if (n_ < 8) throw InvalidInput("curve needs at least 8 samples");
  if (!xi_.value || !xi_.d1 || !xi_.d2) throw InvalidInput("curve needs xi, xi', xi''");
  v_.resize(n_);
  d1_.resize(n_);
  d2_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    const double s = s_at(i);
    v_[i] = xi_.value(s);
    d1_[i] = xi_.d1(s);
    d2_[i] = xi_.d2(s);
    if (!std::isfinite(v_[i]) || !std::isfinite(d1_[i]) || !std::isfinite(d2_[i]))
      throw InvalidInput("curve '" + id_ + "' has non-finite samples");
  }
  const double r = patch_->halfwidth();
  if (!(sup_abs() < r)) throw OutOfPatch("curve '" + id_ + "' leaves the band");
  const double L = patch_->length();
  const double scale[3] = {sup_abs(), sup_abs_d1(), std::abs(*std::max_element(d2_.begin(), d2_.end(), [](double x, double y) {
                                                      return std::abs(x) < std::abs(y);
                                                    }))};
  const Fn1* fns[3] = {&xi_.value, &xi_.d1, &xi_.d2};
  for (int k = 0; k < 8; ++k) {
    const double s = L * (k + 0.37) / 8;
    for (int d = 0; d < 3; ++d) {
      const double a = (*fns[d])(s), b = (*fns[d])(s + L);
      if (std::abs(a - b) > 1e-10 * std::max({1.0, std::abs(a), scale[d]}))
        throw InvalidInput("curve '" + id_ + "' is not periodic");
    }
  }
}

Curve Curve::trig(std::string id, PatchPtr patch, double c0, const std::vector<TrigTerm>& terms, int n) {
  const double L = patch->length();
  return Curve(std::move(id), std::move(patch), trig_polynomial(L, c0, terms), n);
}

Curve Curve::constant(std::string id, PatchPtr patch, double c, int n) {
  return trig(std::move(id), std::move(patch), c, {}, n);
}

Curve Curve::from_samples(std::string id, PatchPtr patch, std::vector<double> values) {
  const int n = static_cast<int>(values.size());
  if (n < 8) throw InvalidInput("sampled curve needs at least 8 values");
  const double L = patch->length();
  // Real DFT coefficients; the Nyquist mode (even n) keeps only its cosine half.
  const int K = n / 2;
  auto a = std::make_shared<std::vector<double>>(K + 1, 0.0);
  auto b = std::make_shared<std::vector<double>>(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    double sa = 0.0, sb = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = 2 * std::numbers::pi * double((static_cast<long long>(k) * j) % n) / n;
      sa += values[j] * std::cos(x);
      sb += values[j] * std::sin(x);
    }
    double scale = 2.0 / n;
    if (k == 0 || (n % 2 == 0 && k == K)) scale = 1.0 / n;
    (*a)[k] = scale * sa;
    (*b)[k] = (n % 2 == 0 && k == K) ? 0.0 : scale * sb;
  }
  const double base = 2 * std::numbers::pi / L;
  auto eval = [a, b, base, K](double s, int order) {
    double acc = order == 0 ? (*a)[0] : 0.0;
    for (int k = 1; k <= K; ++k) {
      const double om = base * k;
      const double c = std::cos(om * s), sn = std::sin(om * s);
      const double A = (*a)[k], B = (*b)[k];
      switch (order) {
        case 0: acc += A * c + B * sn; break;
        case 1: acc += om * (-A * sn + B * c); break;
        default: acc += -om * om * (A * c + B * sn); break;
      }
    }
    return acc;
  };
  XiFunctions f{[eval](double s) { return eval(s, 0); }, [eval](double s) { return eval(s, 1); },
                [eval](double s) { return eval(s, 2); }};
  return Curve(std::move(id), std::move(patch), std::move(f), n);
}

std::vector<PatchPoint> Curve::points() const {
  std::vector<PatchPoint> p(n_);
  for (int i = 0; i < n_; ++i) p[i] = point(i);
  return p;
}

double Curve::sup_abs() const {
  double m = 0.0;
  for (double v : v_) m = std::max(m, std::abs(v));
  return m;
}

double Curve::sup_abs_d1() const {
  double m = 0.0;
  for (double v : d1_) m = std::max(m, std::abs(v));
  return m;
}

double Curve::mean() const {
  double acc = 0.0;
  for (double v : v_) acc += v;
  return acc / n_;
}

Curve Curve::affine(double alpha, double c, std::string id) const {
  const XiFunctions f = xi_;
  XiFunctions g{[f, alpha, c](double s) { return alpha * f.value(s) + c; },
                [f, alpha](double s) { return alpha * f.d1(s); },
                [f, alpha](double s) { return alpha * f.d2(s); }};
  return Curve(std::move(id), patch_, std::move(g), n_);
}

Curve Curve::resampled(int n) const { return Curve(id_, patch_, xi_, n); }

}  // namespace lagbound
