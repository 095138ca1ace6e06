#include "lagbound/numeric.hpp"

#include <Eigen/Dense>

#include "lagbound/errors.hpp"

namespace lagbound {

std::vector<double> poly_fit(const std::vector<double>& x, const std::vector<double>& y, int deg) {
  if (x.size() != y.size() || static_cast<int>(x.size()) <= deg) throw InvalidInput("poly_fit: too few points");
  // Fit in a centred, scaled variable for conditioning, then expand.
  double lo = x.front(), hi = x.front();
  for (double v : x) lo = std::min(lo, v), hi = std::max(hi, v);
  const double mid = 0.5 * (lo + hi);
  const double half = hi > lo ? 0.5 * (hi - lo) : 1.0;
  const int m = static_cast<int>(x.size());
  Eigen::MatrixXd V(m, deg + 1);
  Eigen::VectorXd b(m);
  for (int k = 0; k < m; ++k) {
    const double u = (x[k] - mid) / half;
    double p = 1.0;
    for (int d = 0; d <= deg; ++d, p *= u) V(k, d) = p;
    b(k) = y[k];
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(b);
  // p(x) = sum c_d ((x - mid)/half)^d
  std::vector<double> out(deg + 1, 0.0);
  for (int d = 0; d <= deg; ++d) {
    // expand (x - mid)^d / half^d
    double coef = 1.0;  // C(d, e)
    for (int e = 0; e <= d; ++e) {
      out[e] += c(d) * coef * std::pow(-mid, d - e) / std::pow(half, d);
      coef = coef * (d - e) / (e + 1);
    }
  }
  return out;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  return poly_fit(x, y, 1)[1];
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace lagbound
