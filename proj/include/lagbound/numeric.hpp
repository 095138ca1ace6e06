#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace lagbound {

// Cubic Hermite on [x0, x0 + h], tau in [0, 1].
inline double hermite(double f0, double f1, double d0, double d1, double h, double tau) {
  const double t2 = tau * tau, t3 = t2 * tau;
  return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + tau) * h * d0 + (-2 * t3 + 3 * t2) * f1 +
         (t3 - t2) * h * d1;
}

inline double hermite_d(double f0, double f1, double d0, double d1, double h, double tau) {
  const double t2 = tau * tau;
  return (6 * t2 - 6 * tau) * f0 / h + (3 * t2 - 4 * tau + 1) * d0 + (-6 * t2 + 6 * tau) * f1 / h +
         (3 * t2 - 2 * tau) * d1;
}

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

// Coefficients (c0..cdeg) of a least-squares polynomial fit.
std::vector<double> poly_fit(const std::vector<double>& x, const std::vector<double>& y, int deg);

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> linspace(double a, double b, int n);

}  // namespace lagbound
