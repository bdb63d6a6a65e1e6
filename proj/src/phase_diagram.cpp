#include "rfcw/phase_diagram.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "rfcw/parallel.hpp"
#include "rfcw/roots.hpp"

namespace rfcw {

namespace {

constexpr double kStationaryTol = 1e-9;   // |G'(m)| bound for classification
constexpr double kZeroThreshold = 1e-6;   // derivative-order zero test, scaled
constexpr double kTieTol = 1e-9;          // global-minimum tie, scaled
constexpr double kNonzeroLocation = 1e-6; // |m| above this counts as nonzero

double tie_band(double g_min) {
  return kTieTol * std::max(1.0, std::fabs(g_min));
}

// All stationary minima of G with their values, ascending.
std::vector<std::pair<double, double>> scan_minima(const RateFunction& rf,
                                                   double tol,
                                                   int grid_points) {
  const auto points = scan_stationary_points(
      [&rf](double x) { return rf.G_deriv(1, x); },
      [&rf](double x) { return rf.G_deriv(2, x); }, -1.0, 1.0, grid_points,
      tol);
  std::vector<std::pair<double, double>> minima;
  for (const auto& p : points)
    if (p.is_minimum) minima.emplace_back(p.x, rf.G(p.x));
  return minima;
}

bool argmin_has_nonzero(const std::vector<std::pair<double, double>>& minima) {
  double g_min = kInf;
  for (const auto& [m, v] : minima) g_min = std::min(g_min, v);
  const double tie = tie_band(g_min);
  for (const auto& [m, v] : minima)
    if (v - g_min <= tie && std::fabs(m) > kNonzeroLocation) return true;
  return false;
}

double lattice_point(double lo, double hi, int n, int i) {
  if (n <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / (n - 1);
}

}  // namespace

std::string to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::Paramagnetic: return "paramagnetic";
    case PhaseLabel::Ferromagnetic: return "ferromagnetic";
    case PhaseLabel::FirstOrder: return "first_order";
    case PhaseLabel::SecondOrder: return "second_order";
    case PhaseLabel::Tricritical: return "tricritical";
  }
  return "unknown";
}

MinimumReport classify_minimum(const RateFunction& rf, double m) {
  if (std::fabs(rf.G_deriv(1, m)) > kStationaryTol)
    throw std::invalid_argument("classify_minimum: point is not stationary");
  MinimumReport rep;
  rep.m = m;
  rep.value = rf.G(m);
  double scale = 1.0;
  const double b2 = rf.beta() * rf.beta();
  for (int k = 1; k <= 3; ++k) {
    scale *= b2;
    const double threshold = kZeroThreshold * std::max(1.0, scale);
    const double d = rf.G_deriv(2 * k, m);
    if (d > threshold) {
      rep.k = k;
      rep.lambda = d;
      return rep;
    }
    if (d < -threshold)
      throw std::domain_error(
          "classify_minimum: negative even derivative, not a minimum");
  }
  throw std::domain_error("classify_minimum: degenerate beyond type 3");
}

std::vector<MinimumReport> find_global_minima(const RateFunction& rf,
                                              double tol, int grid_points) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_global_minima: tol <= 0");
  const auto minima = scan_minima(rf, tol, grid_points);
  double g_min = kInf;
  for (const auto& [m, v] : minima) g_min = std::min(g_min, v);
  const double tie = tie_band(g_min);
  std::vector<MinimumReport> out;
  for (const auto& [m, v] : minima)
    if (v - g_min <= tie) out.push_back(classify_minimum(rf, m));
  return out;
}

PhaseLabel classify_phase(const RateFunction&,
                          const std::vector<MinimumReport>& minima) {
  if (minima.empty())
    throw std::domain_error("classify_phase: no global minima reported");
  if (minima.size() == 1) {
    switch (minima[0].k) {
      case 1: return PhaseLabel::Paramagnetic;
      case 2: return PhaseLabel::SecondOrder;
      case 3: return PhaseLabel::Tricritical;
    }
  }
  for (const auto& rep : minima)
    if (rep.k != 1)
      throw std::domain_error(
          "classify_phase: multiple minima with a degenerate member lies "
          "outside the five-phase taxonomy");
  return minima.size() == 2 ? PhaseLabel::Ferromagnetic
                            : PhaseLabel::FirstOrder;
}

PhaseLabel classify_phase(const RateFunction& rf) {
  return classify_phase(rf, find_global_minima(rf));
}

ModelFamily constant_family() {
  return [](double h) { return FieldModel::constant(h); };
}

ModelFamily dichotomous_family(double alpha) {
  return [alpha](double h) { return FieldModel::dichotomous(h, alpha); };
}

ModelFamily uniform_family() {
  return [](double h) {
    return h > 0.0 ? FieldModel::uniform(h) : FieldModel::constant(0.0);
  };
}

double critical_beta(const FieldModel& model, Interval beta_bracket,
                     double tol) {
  if (!model.symmetric())
    throw std::invalid_argument(
        "critical_beta: analysis requires a symmetric field law");
  if (!(tol > 0.0)) throw std::invalid_argument("critical_beta: tol <= 0");
  // Supercritical test: either the origin is already a local maximum or a
  // nonzero minimizer ties for the global minimum.  The curvature test must
  // come first and must not touch the stationary scan: just past the
  // transition the symmetric pair of minima sits below grid resolution.
  auto supercritical = [&model](double beta) {
    FreeEnergy f(model, beta);
    if (beta * (1.0 - beta * f.second(0.0)) < 0.0) return true;
    RateFunction rf(model, beta);
    std::vector<std::pair<double, double>> minima;
    for (double m : rf.stationary_minima()) minima.emplace_back(m, rf.G(m));
    return argmin_has_nonzero(minima);
  };
  double lo = beta_bracket.lo, hi = beta_bracket.hi;
  if (!(lo > 0.0 && hi > lo))
    throw std::invalid_argument("critical_beta: bad bracket");
  if (supercritical(lo))
    throw std::invalid_argument(
        "critical_beta: bracket low end is already supercritical");
  if (!supercritical(hi))
    throw std::invalid_argument(
        "critical_beta: bracket does not straddle the transition");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (supercritical(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double critical_beta(const ModelFamily& family, double h,
                     Interval beta_bracket, double tol) {
  return critical_beta(family(h), beta_bracket, tol);
}

namespace {

// Value split between the best symmetry-broken local minimum and the center
// well; positive while the center is strictly lower, +inf before the broken
// wells exist.
double symmetric_split(const FieldModel& model, double beta) {
  const RateFunction rf(model, beta);
  double best = kInf;
  for (double m : rf.stationary_minima())
    if (std::fabs(m) > kNonzeroLocation) best = std::min(best, rf.G(m));
  return best - rf.G(0.0);
}

}  // namespace

CriticalPoint classify_on_critical_line(const ModelFamily& family, double h,
                                        Interval beta_bracket) {
  const FieldModel model = family(h);
  // The deeper tolerance puts structural ties well inside tie_band and
  // flat derivatives well inside the classifier's zero threshold.
  double beta_c = critical_beta(model, beta_bracket, 1e-10);
  // At a first-order transition the argmin predicate flips where the broken
  // wells enter the tie band, a hair below the true tie, so the returned
  // beta_c would sit exactly on the band edge and the reported argmin would
  // drop part of the triple.  When the center is still a strict local
  // minimum there, sharpen beta_c to the exact value tie.
  const FreeEnergy fe(model, beta_c);
  if (beta_c * (1.0 - beta_c * fe.second(0.0)) > kZeroThreshold) {
    double lo = beta_c - 1e-5, hi = beta_c + 1e-5;
    if (symmetric_split(model, lo) > 0.0 && symmetric_split(model, hi) < 0.0) {
      while (hi - lo > 1e-14 * beta_c) {
        const double mid = 0.5 * (lo + hi);
        (symmetric_split(model, mid) < 0.0 ? hi : lo) = mid;
      }
      beta_c = 0.5 * (lo + hi);
    }
  }
  RateFunction rf(model, beta_c);
  CriticalPoint cp;
  cp.h = h;
  cp.beta_c = beta_c;
  cp.minima = find_global_minima(rf);
  cp.phase = classify_phase(rf, cp.minima);
  return cp;
}

TricriticalPoint tricritical_point(const ModelFamily& family, double beta0,
                                   double h0, double tol, int max_iter) {
  auto residual = [&family](double beta, double h) -> std::array<double, 2> {
    const FreeEnergy fe(family(h), beta);
    const double g2 = beta * (1.0 - beta * fe.second(0.0));
    const double b2 = beta * beta;
    const double g4 = -b2 * b2 * fe.derivative(4, 0.0);
    return {g2, g4};
  };
  double beta = beta0, h = h0;
  for (int it = 0; it < max_iter; ++it) {
    const auto f0 = residual(beta, h);
    const double db = 1e-7 * std::max(1.0, std::fabs(beta));
    const double dh = 1e-7 * std::max(1.0, std::fabs(h));
    const auto fb = residual(beta + db, h);
    const auto fh = residual(beta, h + dh);
    const double j00 = (fb[0] - f0[0]) / db, j01 = (fh[0] - f0[0]) / dh;
    const double j10 = (fb[1] - f0[1]) / db, j11 = (fh[1] - f0[1]) / dh;
    const double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det))
      throw ConvergenceError("tricritical_point: singular Jacobian",
                             {beta, h});
    double step_b = (f0[0] * j11 - f0[1] * j01) / det;
    double step_h = (j00 * f0[1] - j10 * f0[0]) / det;
    // Damping keeps early iterates inside the family's parameter domain.
    const double biggest = std::max(std::fabs(step_b), std::fabs(step_h));
    if (biggest > 0.2) {
      step_b *= 0.2 / biggest;
      step_h *= 0.2 / biggest;
    }
    double next_b = beta - step_b, next_h = h - step_h;
    for (int halving = 0; halving < 40; ++halving) {
      try {
        residual(next_b, next_h);
        break;
      } catch (const std::invalid_argument&) {
        step_b *= 0.5;
        step_h *= 0.5;
        next_b = beta - step_b;
        next_h = h - step_h;
      }
    }
    beta = next_b;
    h = next_h;
    if (std::fabs(step_b) <= tol * std::max(1.0, std::fabs(beta)) &&
        std::fabs(step_h) <= tol * std::max(1.0, std::fabs(h)))
      return {beta, h};
  }
  throw ConvergenceError("tricritical_point: Newton did not converge",
                         {beta, h});
}

ScanResult phase_scan(const ModelFamily& family, const ScanConfig& config) {
  if (config.n_beta < 1 || config.n_h < 1)
    throw std::invalid_argument("phase_scan: resolutions must be >= 1");
  if (config.beta_lo > config.beta_hi || config.h_lo > config.h_hi)
    throw std::invalid_argument("phase_scan: ranges must be ordered");
  if (!(config.beta_lo > 0.0))
    throw std::invalid_argument("phase_scan: beta must be > 0");

  ScanResult result;
  const std::size_t total =
      static_cast<std::size_t>(config.n_beta) * config.n_h;
  result.cells.resize(total);
  parallel_for(total, [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / config.n_h;
    const int j = static_cast<int>(idx) % config.n_h;
    ScanCell& cell = result.cells[idx];
    cell.beta = lattice_point(config.beta_lo, config.beta_hi, config.n_beta, i);
    cell.h = lattice_point(config.h_lo, config.h_hi, config.n_h, j);
    RateFunction rf(family(cell.h), cell.beta);
    cell.minima = find_global_minima(rf);
    cell.phase = classify_phase(rf, cell.minima);
  });

  if (config.trace_critical_line) {
    std::vector<std::optional<ScanCell>> line(config.n_h);
    parallel_for(static_cast<std::size_t>(config.n_h), [&](std::size_t j) {
      const double h = lattice_point(config.h_lo, config.h_hi, config.n_h,
                                     static_cast<int>(j));
      try {
        const auto cp = classify_on_critical_line(
            family, h, {config.beta_lo, config.beta_hi});
        line[j] = ScanCell{cp.beta_c, h, cp.phase, cp.minima};
      } catch (const std::invalid_argument&) {
        // No transition inside the beta range for this h; skip the column.
      }
    });
    for (auto& cell : line)
      if (cell) result.critical_line.push_back(std::move(*cell));
  }
  return result;
}

namespace {

void append_cell_csv(std::string& out, const ScanCell& cell) {
  out += to_g17(cell.beta);
  out += ',';
  out += to_g17(cell.h);
  out += ',';
  out += to_string(cell.phase);
  out += ',';
  out += std::to_string(cell.minima.size());
  for (int column = 0; column < 3; ++column) {
    out += ',';
    for (std::size_t i = 0; i < cell.minima.size(); ++i) {
      if (i > 0) out += ';';
      const auto& rep = cell.minima[i];
      out += column == 0   ? to_g17(rep.m)
             : column == 1 ? std::to_string(rep.k)
                           : to_g17(rep.lambda);
    }
  }
  out += '\n';
}

nlohmann::json cell_to_json(const ScanCell& cell) {
  nlohmann::json minima = nlohmann::json::array();
  for (const auto& rep : cell.minima)
    minima.push_back({{"m", rep.m},
                      {"k", rep.k},
                      {"lambda", rep.lambda},
                      {"value", rep.value}});
  return {{"beta", cell.beta},
          {"h", cell.h},
          {"phase", to_string(cell.phase)},
          {"minima", std::move(minima)}};
}

}  // namespace

std::string scan_to_csv(const ScanResult& result) {
  std::string out = "beta,h,phase,n_minima,m_values,k_values,lambda_values\n";
  for (const auto& cell : result.cells) append_cell_csv(out, cell);
  for (const auto& cell : result.critical_line) append_cell_csv(out, cell);
  return out;
}

nlohmann::json scan_to_json(const ScanResult& result) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : result.cells) cells.push_back(cell_to_json(cell));
  nlohmann::json line = nlohmann::json::array();
  for (const auto& cell : result.critical_line)
    line.push_back(cell_to_json(cell));
  return {{"cells", std::move(cells)}, {"critical_line", std::move(line)}};
}

}  // namespace rfcw
