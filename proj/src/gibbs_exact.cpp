#include "rfcw/gibbs_exact.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rfcw/parallel.hpp"
#include "rfcw/rate_function.hpp"

namespace rfcw {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;
constexpr double kEndpointTol = 1e-12;

void normalize(MagnetizationPMF& pmf) {
  const double lse = log_sum_exp(pmf.log_probs);
  for (double& lp : pmf.log_probs) lp -= lse;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

std::vector<double> MagnetizationPMF::probs() const {
  std::vector<double> p(log_probs.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs[i]);
  return p;
}

MagnetizationPMF product_pmf(const FieldRealization& realization,
                             double beta) {
  const std::size_t n = realization.values.size();
  if (n == 0) throw std::invalid_argument("product_pmf: empty realization");
  MagnetizationPMF pmf;
  pmf.n = n;
  // logw[k] = log Q(k up-spins among the first i sites).
  std::vector<double> logw{0.0}, next;
  for (std::size_t i = 0; i < n; ++i) {
    const double lz = ln_cosh(beta * realization.values[i]) + kLn2;
    const double lp = beta * realization.values[i] - lz;   // spin +1
    const double lq = -beta * realization.values[i] - lz;  // spin -1
    next.assign(i + 2, -kInf);
    for (std::size_t k = 0; k <= i; ++k) {
      next[k] = log_add_exp(next[k], logw[k] + lq);
      next[k + 1] = log_add_exp(next[k + 1], logw[k] + lp);
    }
    logw.swap(next);
  }
  pmf.log_probs = std::move(logw);
  normalize(pmf);
  return pmf;
}

MagnetizationPMF gibbs_pmf(const FieldRealization& realization, double beta) {
  MagnetizationPMF pmf = product_pmf(realization, beta);
  const TiltFunction tilt{beta};
  const auto n = static_cast<double>(pmf.n);
  for (std::size_t i = 0; i < pmf.log_probs.size(); ++i)
    pmf.log_probs[i] += n * tilt(pmf.support(i));
  normalize(pmf);
  return pmf;
}

double empirical_rate(const MagnetizationPMF& pmf,
                      const std::vector<Interval>& set) {
  std::vector<double> members;
  for (std::size_t i = 0; i < pmf.log_probs.size(); ++i) {
    const double m = pmf.support(i);
    for (const auto& iv : set) {
      if (m >= iv.lo - kEndpointTol && m <= iv.hi + kEndpointTol) {
        members.push_back(pmf.log_probs[i]);
        break;
      }
    }
  }
  if (members.empty()) return kInf;
  return -log_sum_exp(members) / static_cast<double>(pmf.n);
}

double empirical_rate(const MagnetizationPMF& pmf, Interval set) {
  return empirical_rate(pmf, std::vector<Interval>{set});
}

LdpReport ldp_convergence_report(const FieldModel& model, double beta,
                                 Interval set,
                                 const std::vector<std::size_t>& n_list,
                                 const std::vector<std::uint64_t>& seeds,
                                 double theory_beta) {
  if (n_list.empty() || seeds.empty())
    throw std::invalid_argument("ldp_convergence_report: empty n_list/seeds");
  if (!std::is_sorted(n_list.begin(), n_list.end()))
    throw std::invalid_argument(
        "ldp_convergence_report: n_list must be increasing");
  if (theory_beta == 0.0) theory_beta = beta;

  const RateFunction rf(model, theory_beta);
  const double theory = inf_rate_on_interval(rf, set.lo, set.hi);

  LdpReport report;
  report.n_list = n_list;
  report.rows.resize(n_list.size() * seeds.size());
  parallel_for(report.rows.size(), [&](std::size_t idx) {
    const std::size_t ni = idx / seeds.size();
    const std::size_t si = idx % seeds.size();
    LdpRow& row = report.rows[idx];
    row.n = n_list[ni];
    row.seed = seeds[si];
    row.set_lo = set.lo;
    row.set_hi = set.hi;
    const auto realization = sample_fields(model, row.n, row.seed);
    row.empirical_rate = empirical_rate(gibbs_pmf(realization, beta), set);
    row.theory_rate = theory;
    row.deviation = std::fabs(row.empirical_rate - theory);
  });

  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    std::vector<double> devs;
    for (std::size_t si = 0; si < seeds.size(); ++si)
      devs.push_back(report.rows[ni * seeds.size() + si].deviation);
    report.median_deviation.push_back(median(std::move(devs)));
  }
  if (n_list.size() >= 3) {
    report.monotone_checked = true;
    const auto& med = report.median_deviation;
    for (std::size_t i = med.size() - 3; i + 1 < med.size(); ++i)
      if (med[i + 1] > med[i]) report.medians_non_increasing = false;
  }
  return report;
}

std::string report_to_csv(const LdpReport& report) {
  std::string out =
      "n,seed,set_lo,set_hi,empirical_rate,theory_rate,deviation\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.seed);
    out += ',';
    out += to_g17(row.set_lo);
    out += ',';
    out += to_g17(row.set_hi);
    out += ',';
    out += to_g17(row.empirical_rate);
    out += ',';
    out += to_g17(row.theory_rate);
    out += ',';
    out += to_g17(row.deviation);
    out += '\n';
  }
  return out;
}

std::vector<double> glauber_sample(const FieldRealization& realization,
                                   double beta, std::size_t sweeps,
                                   std::uint64_t seed) {
  const std::size_t n = realization.values.size();
  if (n == 0) throw std::invalid_argument("glauber_sample: empty realization");
  if (sweeps < 1) throw std::invalid_argument("glauber_sample: sweeps < 1");
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dull);
  auto coin = [&rng](double p) {
    return (static_cast<double>(rng() >> 11) * 0x1.0p-53) < p;
  };
  std::vector<int> spin(n);
  int total = 0;
  for (auto& s : spin) {
    s = coin(0.5) ? 1 : -1;
    total += s;
  }
  std::vector<double> trace;
  trace.reserve(sweeps);
  for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
    for (std::size_t i = 0; i < n; ++i) {
      const double rest = static_cast<double>(total - spin[i]);
      const double field =
          beta * (rest / static_cast<double>(n) + realization.values[i]);
      const double p_up = 0.5 * (1.0 + std::tanh(field));
      const int s = coin(p_up) ? 1 : -1;
      total += s - spin[i];
      spin[i] = s;
    }
    trace.push_back(static_cast<double>(total) / static_cast<double>(n));
  }
  return trace;
}

}  // namespace rfcw
