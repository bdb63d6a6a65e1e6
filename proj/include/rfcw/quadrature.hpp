#pragma once

#include <functional>

namespace rfcw {

// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b] to an absolute
// tolerance. Throws ConvergenceError if the subdivision budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12);

}  // namespace rfcw
