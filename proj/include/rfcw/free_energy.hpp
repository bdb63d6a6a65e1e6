#pragma once

#include <utility>
#include <vector>

#include "rfcw/field_model.hpp"

namespace rfcw {

// Limiting free energy f(x) = E[ln cosh(x + beta h)] for a field law.
// Strictly convex, 1-Lipschitz, f' in (-1,1), f'' in (0,1].
class FreeEnergy {
 public:
  FreeEnergy(FieldModel model, double beta);

  const FieldModel& model() const { return model_; }
  double beta() const { return beta_; }
  double mean_field() const { return mean_field_; }

  // f(x); quadrature to 1e-12 absolute for continuous laws.
  double value(double x) const;
  // f^(k)(x) for 1 <= k <= 6, analytic per variant.
  double derivative(int k, double x) const;

  double prime(double x) const { return derivative(1, x); }
  double second(double x) const { return derivative(2, x); }

 private:
  FieldModel model_;
  double beta_;
  double mean_field_;
  std::vector<std::pair<double, double>> atoms_;  // empty for continuous laws
  double half_width_ = 0.0;                       // beta * h when continuous
};

}  // namespace rfcw
