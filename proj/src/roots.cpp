#include "rfcw/roots.hpp"

#include <algorithm>
#include <cmath>

namespace rfcw {

double solve_increasing(const std::function<double(double)>& g,
                        const std::function<double(double)>& g_prime,
                        double target, Interval bracket, double tol,
                        int max_iter) {
  double lo = bracket.lo, hi = bracket.hi;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double gx = g(x);
    const double r = gx - target;
    if (std::fabs(r) <= tol) return x;
    if (r > 0.0)
      hi = x;
    else
      lo = x;
    const double d = g_prime(x);
    double next = (d > 0.0 && std::isfinite(d)) ? x - r / d : x;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    if (hi - lo < 1e-15 * std::max(1.0, std::fabs(x))) {
      // Bracket exhausted in double precision; accept the best point.
      if (std::fabs(g(x) - target) <= 1e3 * tol) return x;
      break;
    }
  }
  throw ConvergenceError("solve_increasing: no convergence", {lo, hi});
}

namespace {

struct RawRoot {
  double x;
  int nature;  // +1 minimum, -1 maximum, 0 degenerate
  double pad;  // half-width of the flat node run that produced it
};

// A zero-crossing bracket, or a run of consecutive grid nodes whose
// gradient sits below the noise snap (degenerate roots flatten the
// gradient under the evaluation noise across several nodes).
struct Event {
  double lo, hi;
  bool node;       // true: flat node run, false: sign-change bracket
  int sign_left;   // sign of fn_prime entering the event
  int sign_right;  // sign leaving it
};

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

std::vector<Event> collect_events(const std::function<double(double)>& fp,
                                  double lo, double hi, int n, double snap) {
  std::vector<double> xs(n), vs(n);
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    xs[i] = (i == n - 1) ? hi : lo + i * step;
    vs[i] = fp(xs[i]);
    if (std::fabs(vs[i]) <= snap) vs[i] = 0.0;
  }
  std::vector<Event> events;
  int i = 0;
  while (i < n) {
    if (vs[i] == 0.0) {
      int j = i;
      while (j + 1 < n && vs[j + 1] == 0.0) ++j;
      const int sl = i > 0 ? sgn(vs[i - 1]) : 0;
      const int sr = j + 1 < n ? sgn(vs[j + 1]) : 0;
      events.push_back({xs[i], xs[j], true, sl, sr});
      i = j + 1;
    } else {
      if (i + 1 < n && vs[i + 1] != 0.0 && sgn(vs[i]) != sgn(vs[i + 1]))
        events.push_back({xs[i], xs[i + 1], false, sgn(vs[i]),
                          sgn(vs[i + 1])});
      ++i;
    }
  }
  return events;
}

double refine_bracket(const std::function<double(double)>& fp,
                      const std::function<double(double)>& fs, Event ev,
                      double grad_tol) {
  double lo = ev.lo, hi = ev.hi;
  const int sign_lo = ev.sign_left;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double v = fp(x);
    if (std::fabs(v) <= grad_tol) return x;
    if (sgn(v) == sign_lo)
      lo = x;
    else
      hi = x;
    const double d = fs(x);
    double next = std::isfinite(d) && d != 0.0 ? x - v / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    if (hi - lo < 4e-16 * std::max(1.0, std::fabs(x))) return x;
  }
  return x;
}

}  // namespace

std::vector<StationaryPoint> scan_stationary_points(
    const std::function<double(double)>& fn_prime,
    const std::function<double(double)>& fn_second, double lo, double hi,
    int grid_points, double grad_tol) {
  if (grid_points < 3) throw std::invalid_argument("scan_stationary_points: grid_points < 3");
  // Gradient values this small are indistinguishable from the round-off
  // noise of evaluating fn_prime near a flat (high-order) root, so they are
  // snapped to zero before the scan looks for sign changes.  Without the
  // snap, noise-random signs inside the flat band make the single- and
  // doubled-grid event counts disagree.
  const double snap = 0.1 * grad_tol;
  const auto events = collect_events(fn_prime, lo, hi, grid_points, snap);
  const auto check =
      collect_events(fn_prime, lo, hi, 2 * grid_points - 1, snap);
  if (events.size() != check.size())
    throw GridError(
        "stationary-point grid too coarse (doubled grid finds a different "
        "root count); increase grid_points");

  const double step = (hi - lo) / (grid_points - 1);
  std::vector<RawRoot> roots;
  for (const auto& ev : events) {
    RawRoot r;
    if (ev.node) {
      r.x = 0.5 * (ev.lo + ev.hi);
      r.pad = 0.5 * (ev.hi - ev.lo);
      if (ev.sign_left < 0 && ev.sign_right > 0)
        r.nature = 1;
      else if (ev.sign_left > 0 && ev.sign_right < 0)
        r.nature = -1;
      else
        r.nature = 0;  // domain edge or flat inflection: probed below
    } else {
      r.x = refine_bracket(fn_prime, fn_second, ev, grad_tol);
      r.nature = (ev.sign_left < 0 && ev.sign_right > 0) ? 1 : -1;
      r.pad = 0.0;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(),
            [](const RawRoot& a, const RawRoot& b) { return a.x < b.x; });

  // Merge refinements that collapsed onto the same point.
  std::vector<RawRoot> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && std::fabs(r.x - merged.back().x) < 1e-9) {
      if (merged.back().nature == 0) merged.back().nature = r.nature;
      merged.back().pad = std::max(merged.back().pad, r.pad);
      continue;
    }
    merged.push_back(r);
  }

  // Probe node-exact zeros: degenerate minima can be flat to many orders,
  // so the probe distance must be macroscopic yet clear of neighbours.
  for (std::size_t i = 0; i < merged.size(); ++i) {
    if (merged[i].nature != 0) continue;
    double gap = 0.04;
    if (i > 0) gap = std::min(gap, merged[i].x - merged[i - 1].x);
    if (i + 1 < merged.size()) gap = std::min(gap, merged[i + 1].x - merged[i].x);
    double delta = std::max(0.45 * gap, 0.5 * step + merged[i].pad);
    const double l = fn_prime(merged[i].x - delta);
    const double r = fn_prime(merged[i].x + delta);
    if (l < 0.0 && r > 0.0)
      merged[i].nature = 1;
    else if (l > 0.0 && r < 0.0)
      merged[i].nature = -1;
  }

  std::vector<StationaryPoint> out;
  int prev_nature = 0;
  for (const auto& r : merged) {
    if (r.nature == 0) continue;  // inflection with zero slope
    if (r.nature == prev_nature)
      throw GridError(
          "stationary points do not alternate minimum/maximum; grid too "
          "coarse, increase grid_points");
    prev_nature = r.nature;
    out.push_back({r.x, r.nature > 0});
  }
  return out;
}

}  // namespace rfcw
