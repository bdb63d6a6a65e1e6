#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfcw/field_model.hpp"
#include "rfcw/numerics.hpp"

namespace rfcw {

// Law of S_n/n on the lattice X_n = {-1, -1+2/n, ..., 1}, held in
// log-space; probabilities at index i sit at magnetization -1 + 2i/n.
struct MagnetizationPMF {
  std::size_t n = 0;
  std::vector<double> log_probs;  // size n+1, normalized

  double support(std::size_t i) const {
    return -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n);
  }
  std::vector<double> probs() const;
};

// Exact law of S_n/n under the product measure with site marginals
// Q_i({+1}) = e^{beta h_i} / (2 cosh(beta h_i)), by an O(n^2) log-space
// convolution over sites.
MagnetizationPMF product_pmf(const FieldRealization& realization, double beta);

// Exact Gibbs law of S_n/n: the product law reweighted by e^{n F(m)} with
// the tilt F(m) = beta m^2/2 on the lattice.
MagnetizationPMF gibbs_pmf(const FieldRealization& realization, double beta);

// -(1/n) ln P(S_n/n in set), set given as a union of closed intervals;
// lattice points within 1e-12 of an endpoint count as inside. +infinity
// when the set misses the lattice entirely.
double empirical_rate(const MagnetizationPMF& pmf,
                      const std::vector<Interval>& set);
double empirical_rate(const MagnetizationPMF& pmf, Interval set);

struct LdpRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double set_lo = 0.0, set_hi = 0.0;
  double empirical_rate = 0.0;
  double theory_rate = 0.0;
  double deviation = 0.0;
};

struct LdpReport {
  std::vector<LdpRow> rows;            // ordered by (n, seed)
  std::vector<std::size_t> n_list;
  std::vector<double> median_deviation;  // per n, over seeds
  bool monotone_checked = false;         // needs >= 3 n values
  bool medians_non_increasing = true;
};

// Finite-n LDP study: exact Gibbs empirical rate vs inf of the limiting
// rate function over the set, across (n, seed) pairs (parallelized).
LdpReport ldp_convergence_report(const FieldModel& model, double beta,
                                 Interval set,
                                 const std::vector<std::size_t>& n_list,
                                 const std::vector<std::uint64_t>& seeds,
                                 double theory_beta = 0.0);

// Header: n,seed,set_lo,set_hi,empirical_rate,theory_rate,deviation
std::string report_to_csv(const LdpReport& report);

// Single-site heat-bath chain targeting the Gibbs measure; returns S_n/n
// after each sweep. Cross-check for gibbs_pmf at small n.
std::vector<double> glauber_sample(const FieldRealization& realization,
                                   double beta, std::size_t sweeps,
                                   std::uint64_t seed);

}  // namespace rfcw
