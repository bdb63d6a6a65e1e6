#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rfcw/conjugate.hpp"

namespace rfcw {

// Tilt applied to the product law to recover the Gibbs law of S_n/n.
struct TiltFunction {
  double beta = 1.0;
  // F(x) = beta x^2/2 capped at beta/2; continuous and bounded.
  double operator()(double x) const {
    const double c = std::min(std::fabs(x), 1.0);
    return 0.5 * beta * c * c;
  }
};

// LDP rate function I(x) = f*(x) - beta x^2/2 - inf_y J(y), together with
// the equivalent minimization target G(x) = beta x^2/2 - f(beta x). The
// infimum of J over [-1,1] is computed once, eagerly, at construction.
class RateFunction {
 public:
  RateFunction(FieldModel model, double beta, double root_tol = 1e-12);

  double beta() const { return conj_.free_energy().beta(); }
  const Conjugate& conjugate() const { return conj_; }
  const FreeEnergy& free_energy() const { return conj_.free_energy(); }

  // J(x) = f*(x) - beta x^2/2; +infinity for |x| > 1.
  double J(double x) const;
  // I(x) = J(x) - inf J; nonnegative, vanishing exactly at the minimizers.
  double rate(double x) const;
  // G(x) = beta x^2/2 - f(beta x).
  double G(double x) const;
  // d^k/dx^k G(x), 1 <= k <= 6, analytic.
  double G_deriv(int k, double x) const;

  double inf_J() const { return inf_J_; }
  // Stationary minima of G on (-1,1), ascending (all of them, local ones
  // included); G takes the same values as J there.
  const std::vector<double>& stationary_minima() const { return minima_; }

 private:
  Conjugate conj_;
  std::vector<double> minima_;
  double inf_J_;
};

// inf of I over [lo, hi] intersected with [-1, 1]; +infinity if the
// intersection is empty.
double inf_rate_on_interval(const RateFunction& rf, double lo, double hi);

}  // namespace rfcw
