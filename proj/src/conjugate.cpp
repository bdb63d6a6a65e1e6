#include "rfcw/conjugate.hpp"

#include <cmath>
#include <stdexcept>

#include "rfcw/numerics.hpp"
#include "rfcw/roots.hpp"

namespace rfcw {

namespace {
// cosh overflows near 710; ln_cosh is safe but f' is flat to machine
// precision long before this, so the cap is never the binding constraint.
constexpr double kBracketCap = 700.0;
constexpr double kLn2 = 0.69314718055994530941723212145818;
}  // namespace

Conjugate::Conjugate(FreeEnergy fe, double root_tol)
    : fe_(std::move(fe)), root_tol_(root_tol), f0_(fe_.value(0.0)) {
  if (!(root_tol > 0.0))
    throw std::invalid_argument("Conjugate: root_tol must be > 0");
}

double Conjugate::maximizer(double x) const {
  if (!(std::fabs(x) < 1.0))
    throw std::domain_error("Conjugate::maximizer: |x| must be < 1");
  double lo = -1.0, hi = 1.0;
  while (fe_.prime(lo) > x && lo > -kBracketCap) lo = std::max(2.0 * lo, -kBracketCap);
  while (fe_.prime(hi) < x && hi < kBracketCap) hi = std::min(2.0 * hi, kBracketCap);
  if (fe_.prime(lo) > x || fe_.prime(hi) < x)
    throw ConvergenceError("Conjugate::maximizer: bracket cap reached",
                           {lo, hi});
  return solve_increasing([this](double y) { return fe_.prime(y); },
                          [this](double y) { return fe_.second(y); }, x,
                          {lo, hi}, root_tol_);
}

double Conjugate::value(double x) const {
  const double ax = std::fabs(x);
  if (ax > 1.0) return kInf;
  if (ax == 1.0) return kLn2 - fe_.beta() * fe_.mean_field() * x;
  const double y = maximizer(x);
  return x * y - fe_.value(y);
}

double Conjugate::log_mgf(double x) const { return fe_.value(x) - f0_; }

double Conjugate::q_rate(double x) const { return value(x) + f0_; }

double Conjugate::biconjugate(double x) const {
  const double z = fe_.prime(x);  // the conjugate slope at x
  return x * z - value(z);
}

}  // namespace rfcw
