#pragma once

#include "rfcw/free_energy.hpp"

namespace rfcw {

// Legendre-Fenchel conjugate f*(x) = sup_y { xy - f(y) } of the limiting
// free energy. f is smooth and strictly convex with f' ranging inside
// (-1,1), so the sup is a bracketed monotone root solve for f'(y) = x.
class Conjugate {
 public:
  explicit Conjugate(FreeEnergy fe, double root_tol = 1e-12);

  const FreeEnergy& free_energy() const { return fe_; }
  double root_tol() const { return root_tol_; }

  // f*(x): +infinity for |x| > 1; the boundary limit ln 2 - beta*E[h]*x at
  // |x| = 1; the interior supremum otherwise.
  double value(double x) const;

  // y* with f'(y*) = x, defined for |x| < 1.
  double maximizer(double x) const;

  // Lambda(x) = f(x) - f(0).
  double log_mgf(double x) const;

  // R(x) = f*(x) + f(0).
  double q_rate(double x) const;

  // f**(x); equals f(x) for this class of inputs (Fenchel-Moreau).
  double biconjugate(double x) const;

 private:
  FreeEnergy fe_;
  double root_tol_;
  double f0_;
};

}  // namespace rfcw
