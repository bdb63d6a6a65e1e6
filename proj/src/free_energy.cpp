#include "rfcw/free_energy.hpp"

#include <cmath>
#include <stdexcept>

#include "rfcw/numerics.hpp"
#include "rfcw/quadrature.hpp"

namespace rfcw {

FreeEnergy::FreeEnergy(FieldModel model, double beta)
    : model_(std::move(model)), beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("FreeEnergy: beta must be > 0");
  mean_field_ = model_.mean_field();
  if (model_.has_atoms())
    atoms_ = model_.atoms();
  else
    half_width_ = beta_ * model_.support_half_width();
}

double FreeEnergy::value(double x) const {
  if (!atoms_.empty()) {
    double sum = 0.0;
    for (const auto& [v, p] : atoms_) sum += p * ln_cosh(x + beta_ * v);
    return sum;
  }
  // (1/(2bh)) * integral of ln cosh over [x-bh, x+bh].
  const double tol = 1e-12 * std::max(1.0, 2.0 * half_width_);
  const double integral = integrate([](double v) { return ln_cosh(v); },
                                    x - half_width_, x + half_width_, tol);
  return integral / (2.0 * half_width_);
}

double FreeEnergy::derivative(int k, double x) const {
  if (k < 1 || k > 6)
    throw std::invalid_argument("FreeEnergy::derivative: k must be in 1..6");
  if (!atoms_.empty()) {
    double sum = 0.0;
    for (const auto& [v, p] : atoms_)
      sum += p * ln_cosh_deriv(k, x + beta_ * v);
    return sum;
  }
  // Differentiating the integral collapses to boundary terms of order k-1.
  const double hi = x + half_width_, lo = x - half_width_;
  const double top = k == 1 ? ln_cosh(hi) : ln_cosh_deriv(k - 1, hi);
  const double bot = k == 1 ? ln_cosh(lo) : ln_cosh_deriv(k - 1, lo);
  return (top - bot) / (2.0 * half_width_);
}

}  // namespace rfcw
