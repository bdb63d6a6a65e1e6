#include "rfcw/numerics.hpp"

#include <cmath>
#include <cstdio>

namespace rfcw {

double ln_cosh(double x) noexcept {
  const double a = std::fabs(x);
  if (a < 1e-2) {
    // Taylor branch keeps relative accuracy near zero.
    const double x2 = x * x;
    return x2 * (0.5 + x2 * (-1.0 / 12.0 + x2 * (1.0 / 45.0)));
  }
  return a + std::log1p(std::exp(-2.0 * a)) - 0.6931471805599453094172321;
}

double ln_cosh_deriv(int k, double x) {
  if (k == 0) return ln_cosh(x);
  const double t = std::tanh(x);
  const double t2 = t * t;
  switch (k) {
    case 1: return t;
    case 2: return 1.0 - t2;
    case 3: return t * (-2.0 + 2.0 * t2);
    case 4: return -2.0 + t2 * (8.0 - 6.0 * t2);
    case 5: return t * (16.0 + t2 * (-40.0 + 24.0 * t2));
    case 6: return 16.0 + t2 * (-136.0 + t2 * (240.0 - 120.0 * t2));
    default: throw std::invalid_argument("ln_cosh_deriv: order must be in [0, 6]");
  }
}

double log_add_exp(double a, double b) noexcept {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp(-std::fabs(a - b)));
}

double log_sum_exp(const std::vector<double>& log_terms) noexcept {
  double m = -kInf;
  for (double v : log_terms)
    if (v > m) m = v;
  if (m == -kInf) return -kInf;
  double acc = 0.0;
  for (double v : log_terms) acc += std::exp(v - m);
  return m + std::log(acc);
}

std::string to_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_g6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

ConvergenceError::ConvergenceError(const std::string& what, Interval bracket)
    : std::runtime_error(what + " [bracket " + std::to_string(bracket.lo) + ", " +
                         std::to_string(bracket.hi) + "]"),
      bracket_(bracket) {}

}  // namespace rfcw
