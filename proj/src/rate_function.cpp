#include "rfcw/rate_function.hpp"

#include <stdexcept>

#include "rfcw/numerics.hpp"
#include "rfcw/roots.hpp"

namespace rfcw {

RateFunction::RateFunction(FieldModel model, double beta, double root_tol)
    : conj_(FreeEnergy(std::move(model), beta), root_tol) {
  // G' < 0 at -1 and G' > 0 at +1 (|f'| < 1), so every minimizer is
  // interior and inf J = min G over the stationary minima.
  const auto points = scan_stationary_points(
      [this](double x) { return G_deriv(1, x); },
      [this](double x) { return G_deriv(2, x); }, -1.0, 1.0, 2001);
  inf_J_ = kInf;
  for (const auto& p : points) {
    if (!p.is_minimum) continue;
    minima_.push_back(p.x);
  }
  if (minima_.empty())
    throw std::logic_error("RateFunction: no interior minimum of G found");
  // Taking the infimum through J's own evaluation path (not G's) keeps
  // rate() exactly zero at the argmin instead of zero up to roundoff.
  for (double m : minima_) inf_J_ = std::min(inf_J_, J(m));
}

double RateFunction::J(double x) const {
  if (std::fabs(x) > 1.0) return kInf;
  return conj_.value(x) - 0.5 * beta() * x * x;
}

double RateFunction::rate(double x) const {
  if (std::fabs(x) > 1.0) return kInf;
  const double r = J(x) - inf_J_;
  // Negatives below evaluation noise are roundoff, not signal.
  return (r < 0.0 && r > -1e-12) ? 0.0 : r;
}

double RateFunction::G(double x) const {
  const double b = beta();
  return 0.5 * b * x * x - free_energy().value(b * x);
}

double RateFunction::G_deriv(int k, double x) const {
  const double b = beta();
  switch (k) {
    case 1:
      return b * (x - free_energy().prime(b * x));
    case 2:
      return b * (1.0 - b * free_energy().second(b * x));
    default: {
      if (k < 1 || k > 6)
        throw std::invalid_argument("RateFunction::G_deriv: k must be in 1..6");
      double scale = -1.0;
      for (int i = 0; i < k; ++i) scale *= b;
      return scale * free_energy().derivative(k, b * x);
    }
  }
}

double inf_rate_on_interval(const RateFunction& rf, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("inf_rate_on_interval: lo > hi");
  const double a = std::max(lo, -1.0);
  const double b = std::min(hi, 1.0);
  if (a > b) return kInf;
  // I is unimodal between consecutive stationary points, so the infimum is
  // attained at an endpoint or at an interior minimum.
  double best = std::min(rf.rate(a), rf.rate(b));
  for (double m : rf.stationary_minima())
    if (m > a && m < b) best = std::min(best, rf.rate(m));
  return best;
}

}  // namespace rfcw
