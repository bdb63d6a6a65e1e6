#include "rfcw/closed_forms.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

#include "rfcw/numerics.hpp"
#include "rfcw/roots.hpp"

namespace rfcw {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kPi = 3.14159265358979323846264338327950;

// inf over [-1,1] of a smooth function whose derivative runs from -inf/
// negative at -1 to +inf/positive at +1; shares the stationary-point
// machinery with the phase-diagram minimizer.
double inf_on_unit_interval(const std::function<double(double)>& value,
                            const std::function<double(double)>& deriv,
                            const std::function<double(double)>& second) {
  const auto points = scan_stationary_points(deriv, second, -1.0, 1.0, 2001);
  double best = kInf;
  for (const auto& p : points)
    if (p.is_minimum) best = std::min(best, value(p.x));
  return best;
}

double series_dilog(double z) {
  // Remainder after N terms <= |z|^{N+1}/(N+1)^2 / (1-|z|).
  const double az = std::fabs(z);
  double sum = 0.0, zp = 1.0;
  for (int n = 1; n <= 200; ++n) {
    zp *= z;
    sum += zp / (static_cast<double>(n) * n);
    const double tail =
        std::fabs(zp * z) / ((n + 1.0) * (n + 1.0) * (1.0 - az));
    if (tail <= 1e-15) return sum;
  }
  throw ConvergenceError("dilog: series did not meet its tail bound",
                         {z, z});
}

}  // namespace

double cramer_entropy(double x) {
  const double ax = std::fabs(x);
  if (ax > 1.0) return kInf;
  if (ax == 1.0) return kLn2;
  if (x == 0.0) return 0.0;
  return 0.5 * ((1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x));
}

double classical_rate(double x, double beta, double h) {
  if (!(beta > 0.0)) throw std::invalid_argument("classical_rate: beta <= 0");
  if (std::fabs(x) > 1.0) return kInf;
  auto phi = [beta, h](double y) {
    return cramer_entropy(y) - 0.5 * beta * y * y - beta * h * y;
  };
  const double inf_phi = inf_on_unit_interval(
      phi,
      [beta, h](double y) { return std::atanh(y) - beta * y - beta * h; },
      [beta](double y) { return 1.0 / (1.0 - y * y) - beta; });
  return phi(x) - inf_phi;
}

double dichotomous_rate(double x, double beta, double h) {
  if (!(beta > 0.0))
    throw std::invalid_argument("dichotomous_rate: beta <= 0");
  if (!(h >= 0.0)) throw std::invalid_argument("dichotomous_rate: h < 0");
  const double ax = std::fabs(x);
  if (ax > 1.0) return kInf;

  auto g = [beta, h](double y) {
    return 0.5 * beta * y * y -
           0.5 * (ln_cosh(beta * (y + h)) + ln_cosh(beta * (y - h)));
  };
  const double inf_g = inf_on_unit_interval(
      g,
      [beta, h](double y) {
        return beta * y - 0.5 * beta * (std::tanh(beta * (y + h)) +
                                        std::tanh(beta * (y - h)));
      },
      [beta, h](double y) {
        return beta - 0.5 * beta * beta *
                          (ln_cosh_deriv(2, beta * (y + h)) +
                           ln_cosh_deriv(2, beta * (y - h)));
      });

  if (ax == 1.0) return kLn2 - 0.5 * beta - inf_g;

  const double a = std::sinh(2.0 * beta * h);
  const double b = std::cosh(2.0 * beta * h);
  const double s = std::sqrt(1.0 + x * x * a * a);
  return kLn2 - 0.5 * beta * x * x +
         0.5 * x * std::asinh(x / (1.0 - x * x) * (b + s)) +
         0.5 * std::log(0.5 * (1.0 - x * x)) - 0.5 * std::log(b + s) - inf_g;
}

double dilog(double z) {
  if (!(std::fabs(z) <= 1.0))
    throw std::domain_error("dilog: |z| must be <= 1");
  if (z == 1.0) return kPi * kPi / 6.0;
  if (std::fabs(z) <= 0.5) return series_dilog(z);
  if (z > 0.5)  // reflection: dilog(z) + dilog(1-z) = pi^2/6 - ln z ln(1-z)
    return kPi * kPi / 6.0 - std::log(z) * std::log1p(-z) -
           series_dilog(1.0 - z);
  // z in [-1, -0.5): Landen, dilog(z) = -ln^2(1-z)/2 - dilog(z/(z-1)),
  // whose argument lands in (1/3, 1/2].
  const double l = std::log1p(-z);
  return -0.5 * l * l - series_dilog(z / (z - 1.0));
}

double uniform_G(double x, double beta, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("uniform_G: h must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("uniform_G: beta <= 0");
  const double ax = std::fabs(x);
  const double quarter = 4.0 * beta * h;
  double g = kLn2 + 0.5 * beta * x * x -
             dilog(-std::exp(-2.0 * beta * (h + ax))) / quarter;
  if (ax <= h) {
    g += -0.5 * beta / h * (x * x + h * h) - kPi * kPi / (24.0 * beta * h) -
         dilog(-std::exp(-2.0 * beta * (h - ax))) / quarter;
  } else {
    g += -beta * ax + dilog(-std::exp(-2.0 * beta * (ax - h))) / quarter;
  }
  return g;
}

}  // namespace rfcw
