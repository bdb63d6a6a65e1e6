#pragma once

#include <functional>
#include <vector>

#include "rfcw/numerics.hpp"

namespace rfcw {

/// Solves g(y) = target for strictly increasing g on a straddling bracket.
/// Newton steps with g_prime, bisection whenever a step leaves the bracket.
/// Converges on |g(y) - target| <= tol; throws ConvergenceError otherwise.
double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& g_prime,
                        double target, Interval bracket, double tol,
                        int max_iter = 200);

/// A refined root of fn_prime together with its local nature.
struct StationaryPoint {
  double x = 0.0;
  bool is_minimum = false;
};

/// Finds the stationary points of a smooth function on [lo, hi] from sign
/// changes of its derivative on a uniform grid, refined by safeguarded
/// Newton to |fn_prime| <= grad_tol.  A rescan at doubled resolution must
/// reproduce the bracket count, otherwise GridError is thrown.  Grid nodes
/// where the derivative vanishes exactly are classified by probing the
/// derivative a safe distance to either side.
std::vector<StationaryPoint> scan_stationary_points(
    const std::function<double(double)>& fn_prime,
    const std::function<double(double)>& fn_second, double lo, double hi,
    int grid_points, double grad_tol = 1e-12);

}  // namespace rfcw
