#pragma once

#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "rfcw/numerics.hpp"
#include "rfcw/rate_function.hpp"

namespace rfcw {

// Local expansion G(m) + lambda (x-m)^{2k}/(2k)! + O((x-m)^{2k+1}).
struct MinimumReport {
  double m = 0.0;       // location, in (-1,1)
  int k = 0;            // type: 1, 2, or 3
  double lambda = 0.0;  // strength G^(2k)(m) > 0
  double value = 0.0;   // G(m)
};

enum class PhaseLabel {
  Paramagnetic,   // unique global minimum, type 1
  Ferromagnetic,  // two global minima, type 1
  FirstOrder,     // three or more global minima, type 1
  SecondOrder,    // unique global minimum, type 2
  Tricritical,    // unique global minimum, type 3
};

std::string to_string(PhaseLabel label);

// Every stationary point of G whose value ties with the global minimum
// (within 1e-9 * max(1, |G_min|)), refined to |G'| <= tol, ascending in m.
std::vector<MinimumReport> find_global_minima(const RateFunction& rf,
                                              double tol = 1e-12,
                                              int grid_points = 2001);

// Type and strength at a stationary point m (|G'(m)| <= 1e-9 required).
MinimumReport classify_minimum(const RateFunction& rf, double m);

PhaseLabel classify_phase(const RateFunction& rf);
PhaseLabel classify_phase(const RateFunction& rf,
                          const std::vector<MinimumReport>& minima);

// A one-parameter family of field models, indexed by the field strength h.
using ModelFamily = std::function<FieldModel(double)>;

ModelFamily constant_family();
ModelFamily dichotomous_family(double alpha = 0.5);
ModelFamily uniform_family();

// Smallest beta at which the global argmin set of G is no longer {0},
// located by bisection to tol; requires a symmetric law and a straddling
// bracket. critical_beta(constant_family(), 0, ...) = 1.
double critical_beta(const FieldModel& model, Interval beta_bracket,
                     double tol = 1e-8);
double critical_beta(const ModelFamily& family, double h,
                     Interval beta_bracket, double tol = 1e-8);

// Classifies exactly on the critical line: locates beta_c(h) to a deeper
// tolerance, then classifies at the bracket midpoint, where structural
// ties and flat derivatives sit inside the classifier's thresholds.
struct CriticalPoint {
  double h = 0.0;
  double beta_c = 0.0;
  PhaseLabel phase = PhaseLabel::Paramagnetic;
  std::vector<MinimumReport> minima;
};
CriticalPoint classify_on_critical_line(const ModelFamily& family, double h,
                                        Interval beta_bracket);

// Simultaneous root of G''(0) = 0 and G''''(0) = 0 in (beta, h) by damped
// 2-D Newton with finite-difference Jacobian.
struct TricriticalPoint {
  double beta = 0.0;
  double h = 0.0;
};
TricriticalPoint tricritical_point(const ModelFamily& family, double beta0,
                                   double h0, double tol = 1e-12,
                                   int max_iter = 80);

struct ScanConfig {
  double beta_lo = 0.5, beta_hi = 2.0;
  int n_beta = 2;
  double h_lo = 0.0, h_hi = 0.5;
  int n_h = 2;
  bool trace_critical_line = false;  // symmetric families only
};

struct ScanCell {
  double beta = 0.0, h = 0.0;
  PhaseLabel phase = PhaseLabel::Paramagnetic;
  std::vector<MinimumReport> minima;
};

struct ScanResult {
  std::vector<ScanCell> cells;          // row-major over (beta, h)
  std::vector<ScanCell> critical_line;  // one per h when traced
};

// Lattice of labels over beta x h; cells are independent and distributed
// across the worker pool, assembled by index.
ScanResult phase_scan(const ModelFamily& family, const ScanConfig& config);

// Header: beta,h,phase,n_minima,m_values,k_values,lambda_values
std::string scan_to_csv(const ScanResult& result);
nlohmann::json scan_to_json(const ScanResult& result);

}  // namespace rfcw
