#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfcw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// ln cosh(x), overflow-safe for all x: |x| + log1p(e^{-2|x|}) - ln 2.
double ln_cosh(double x) noexcept;

/// k-th derivative of ln cosh at x, 0 <= k <= 6 (polynomial in tanh x).
double ln_cosh_deriv(int k, double x);

/// log(e^a + e^b) without overflow; handles -inf operands.
double log_add_exp(double a, double b) noexcept;

/// log sum of exponentials of a vector of log-terms.
double log_sum_exp(const std::vector<double>& log_terms) noexcept;

/// Round-trip decimal rendering (17 significant digits); infinities render
/// as "inf"/"-inf".
std::string to_g17(double v);

// Compact 6-significant-digit rendering for human-readable summaries.
std::string to_g6(double v);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const noexcept { return hi - lo; }
};

/// An iterative solve stalled; carries the final bracket for diagnosis.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, Interval bracket);
  Interval bracket() const noexcept { return bracket_; }

 private:
  Interval bracket_;
};

/// Stationary-point grid was too coarse to resolve the root structure.
class GridError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rfcw
