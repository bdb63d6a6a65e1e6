// End-to-end acceptance gate: one line per criterion, nonzero exit when any
// fails. Tolerances are the project's published accuracy targets; see the
// unit suites for finer-grained diagnostics when a line flips to FAIL.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rfcw/closed_forms.hpp"
#include "rfcw/conjugate.hpp"
#include "rfcw/field_model.hpp"
#include "rfcw/free_energy.hpp"
#include "rfcw/gibbs_exact.hpp"
#include "rfcw/numerics.hpp"
#include "rfcw/phase_diagram.hpp"
#include "rfcw/rate_function.hpp"

using namespace rfcw;

namespace {

int failures = 0;

void report(int idx, const std::string& label, bool ok,
            const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", idx,
              label.c_str(), detail.empty() ? "" : " — ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

template <typename F>
double sweep_max(F&& f, double lo, double hi, int points) {
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    worst = std::max(worst, std::fabs(f(x)));
  }
  return worst;
}

// Ternary search for the minimizer of a unimodal-on-bracket function.
template <typename F>
double refine_min(F&& f, double lo, double hi) {
  for (int i = 0; i < 200; ++i) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (f(a) < f(b))
      hi = b;
    else
      lo = a;
  }
  return 0.5 * (lo + hi);
}

void criterion_1() {
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.0}) {
    for (double h : {0.0, 0.2, 1.0}) {
      const RateFunction rf(FieldModel::constant(h), beta);
      worst = std::max(worst, sweep_max(
                                  [&](double x) {
                                    return rf.rate(x) -
                                           classical_rate(x, beta, h);
                                  },
                                  -0.99, 0.99, 201));
    }
  }
  report(1, "constant-field rate matches the entropy closed form",
         worst <= 1e-8, fmt("max|dev| = %.3g (tol %.0e)", worst, 1e-8));
}

void criterion_2() {
  double worst = 0.0;
  for (double beta : {0.6, 1.5, 3.0}) {
    for (double h : {0.2, 0.439, 0.8}) {
      const RateFunction rf(FieldModel::dichotomous(h, 0.5), beta);
      worst = std::max(worst, sweep_max(
                                  [&](double x) {
                                    return rf.rate(x) -
                                           dichotomous_rate(x, beta, h);
                                  },
                                  -0.99, 0.99, 201));
    }
  }
  report(2, "two-point rate matches the arsinh closed form", worst <= 1e-6,
         fmt("max|dev| = %.3g (tol %.0e)", worst, 1e-6));
}

void criterion_3() {
  double worst = 0.0;
  for (double beta : {0.5, 1.0, 2.5}) {
    for (double h : {0.3, 1.0}) {
      const RateFunction rf(FieldModel::uniform(h), beta);
      worst = std::max(
          worst, sweep_max([&](double x) { return rf.G(x) -
                                                  uniform_G(x, beta, h); },
                           -2.0, 2.0, 201));
    }
  }
  report(3, "uniform-field G: quadrature equals the dilogarithm form",
         worst <= 1e-9, fmt("max|dev| = %.3g (tol %.0e)", worst, 1e-9));
}

void criterion_4() {
  const double bc = critical_beta(FieldModel::constant(0.0), {0.5, 2.0});
  report(4, "zero-field critical temperature", std::fabs(bc - 1.0) <= 1e-6,
         fmt("beta_c = %.9f (target 1 +- %.0e)", bc, 1e-6));
}

void criterion_5() {
  bool ok = true;
  std::string detail;

  for (double h : {0.5, 0.6, 0.8, 1.0, 1.5}) {
    for (double beta : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      const RateFunction rf(FieldModel::dichotomous(h, 0.5), beta);
      if (classify_phase(rf) != PhaseLabel::Paramagnetic) {
        ok = false;
        detail = fmt("unexpected order at beta=%.2f h=%.2f", beta, h);
      }
    }
  }

  double prev = 0.0;
  for (double h : {0.1, 0.2, 0.3, 0.4, 0.45}) {
    const double bc = critical_beta(dichotomous_family(), h, {0.5, 12.0});
    if (!(bc > prev)) {
      ok = false;
      detail = fmt("beta_c not increasing at h=%.2f (%.6f)", h, bc);
    }
    prev = bc;
  }

  const auto second = classify_on_critical_line(dichotomous_family(), 0.3,
                                                {0.5, 6.0});
  if (second.phase != PhaseLabel::SecondOrder) {
    ok = false;
    detail = "h=0.3 transition not second order";
  }

  const double h_tri = 2.0 / 3.0 * std::acosh(std::sqrt(1.5));
  const auto tri = tricritical_point(dichotomous_family(), 1.4, 0.42);
  if (!(std::fabs(tri.h - h_tri) <= 1e-4)) {
    ok = false;
    detail = fmt("tricritical h = %.6f vs %.6f", tri.h, h_tri);
  }

  const auto first = classify_on_critical_line(dichotomous_family(), 0.46,
                                               {0.5, 6.0});
  if (first.phase != PhaseLabel::FirstOrder || first.minima.size() != 3 ||
      std::fabs(first.minima[1].m) > 1e-7 ||
      std::fabs(first.minima[0].m + first.minima[2].m) > 1e-7) {
    ok = false;
    detail = "h=0.46 transition not first order with a symmetric triple";
  }

  report(5, "two-point family phase structure", ok, detail);
}

void criterion_6() {
  bool ok = true;
  std::string detail;
  for (double h : {0.2, 0.5, 0.8}) {
    const auto cp = classify_on_critical_line(uniform_family(), h,
                                              {0.5, 3.0});
    if (cp.phase == PhaseLabel::FirstOrder) {
      ok = false;
      detail = fmt("first-order label at h=%.2f (beta_c=%.4f)", h, cp.beta_c);
    }
  }
  report(6, "uniform family shows no first-order transition", ok, detail);
}

void criterion_7() {
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + (7 * t + 3) % 14;
    const double beta = 0.4 + 0.6 * (t % 3);
    FieldModel model = FieldModel::dichotomous(1.0, 0.5);
    if (t % 3 == 1) model = FieldModel::uniform(0.9);
    if (t % 3 == 2) model = FieldModel::finite_table({-0.5, 0.0, 1.0},
                                                     {0.3, 0.4, 0.3});
    const auto r = sample_fields(model, n, 1000 + t);
    const auto pmf = gibbs_pmf(r, beta);

    // Direct Boltzmann enumeration over all 2^n configurations.
    std::vector<double> bucket(n + 1, -kInf);
    for (std::size_t mask = 0; mask < (1u << n); ++mask) {
      double s = 0.0, dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double sigma = (mask >> i) & 1u ? 1.0 : -1.0;
        s += sigma;
        dot += sigma * r.values[i];
      }
      const double logw =
          beta * s * s / (2.0 * static_cast<double>(n)) + beta * dot;
      const auto k = static_cast<std::size_t>((s + static_cast<double>(n)) / 2);
      bucket[k] = log_add_exp(bucket[k], logw);
    }
    const double lse = log_sum_exp(bucket);
    for (std::size_t k = 0; k <= n; ++k)
      worst = std::max(worst, std::fabs(pmf.log_probs[k] - (bucket[k] - lse)));
  }
  report(7, "exact law equals direct Boltzmann enumeration", worst <= 1e-12,
         fmt("max|log dev| = %.3g over 50 realizations (tol %.0e)", worst,
             1e-12));
}

void criterion_8() {
  const std::vector<std::size_t> n_list{250, 1000, 4000};
  const std::vector<std::uint64_t> seeds{11, 12, 13, 14, 15,
                                         16, 17, 18, 19, 20};
  bool ok = true;
  std::string detail;
  for (const auto& [model, beta] :
       std::vector<std::pair<FieldModel, double>>{
           {FieldModel::constant(0.0), 0.5},
           {FieldModel::dichotomous(1.0, 0.5), 0.6}}) {
    for (double a : {0.3, 0.5}) {
      const auto rep = ldp_convergence_report(model, beta, {a, 1.0}, n_list,
                                              seeds);
      const double final_median = rep.median_deviation.back();
      if (!rep.medians_non_increasing || final_median > 0.02) {
        ok = false;
        detail = fmt("set [%.1f,1]: final median %.4f", a, final_median) +
                 (rep.medians_non_increasing ? " (over budget)"
                                             : " (not monotone)");
      }
    }
  }
  report(8, "finite-size rates converge to the limit rate", ok, detail);
}

void criterion_9() {
  bool ok = true;
  std::string detail;

  {  // Empirical free energy: 1-Lipschitz and convex on random inputs.
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> ux(-5.0, 5.0);
    for (const auto& model :
         {FieldModel::uniform(1.0), FieldModel::dichotomous(0.8, 0.4)}) {
      const auto r = sample_fields(model, 64, 5);
      for (int i = 0; i < 300; ++i) {
        const double x = ux(rng), y = ux(rng);
        const double fx = empirical_free_energy(r, x, 1.2);
        const double fy = empirical_free_energy(r, y, 1.2);
        const double fm = empirical_free_energy(r, 0.5 * (x + y), 1.2);
        if (std::fabs(fx - fy) > std::fabs(x - y) + 1e-12) {
          ok = false;
          detail = "Lipschitz bound violated";
        }
        if (fm > 0.5 * (fx + fy) + 1e-12) {
          ok = false;
          detail = "midpoint convexity violated";
        }
      }
    }
  }

  {  // Involution: the biconjugate recovers the free energy.
    for (const auto& [model, beta] :
         std::vector<std::pair<FieldModel, double>>{
             {FieldModel::dichotomous(1.0, 0.5), 0.8},
             {FieldModel::uniform(0.5), 1.3}}) {
      const FreeEnergy fe(model, beta);
      const Conjugate conj(fe);
      const double worst = sweep_max(
          [&](double y) { return conj.biconjugate(y) - fe.value(y); }, -3.0,
          3.0, 121);
      if (worst > 1e-8) {
        ok = false;
        detail = fmt("biconjugate deviates by %.3g (tol %.0e)", worst, 1e-8);
      }
    }
  }

  {  // Young's inequality on 10^3 random pairs.
    const FieldModel model = FieldModel::dichotomous(1.0, 0.5);
    const FreeEnergy fe(model, 0.8);
    const Conjugate conj(fe);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-0.999, 0.999);
    std::uniform_real_distribution<double> uy(-8.0, 8.0);
    for (int i = 0; i < 1000; ++i) {
      const double x = ux(rng), y = uy(rng);
      if (fe.value(y) + conj.value(x) < x * y - 1e-12) {
        ok = false;
        detail = fmt("Young violated at x=%.3f y=%.3f", x, y);
      }
    }
  }

  {  // Argmin sets of I and G coincide.
    for (const auto& [model, beta] :
         std::vector<std::pair<FieldModel, double>>{
             {FieldModel::constant(0.0), 2.0},
             {FieldModel::dichotomous(0.3, 0.5), 2.0},
             {FieldModel::constant(0.3), 1.5}}) {
      const RateFunction rf(model, beta);
      const auto minima = find_global_minima(rf);

      const int grid = 8001;
      std::vector<double> rate(grid);
      double rate_min = kInf;
      auto node = [&](int i) {
        return -0.999 + 1.998 * static_cast<double>(i) / (grid - 1);
      };
      for (int i = 0; i < grid; ++i) {
        rate[i] = rf.rate(node(i));
        rate_min = std::min(rate_min, rate[i]);
      }
      std::vector<double> argmins;
      int i = 0;
      while (i < grid) {
        if (rate[i] <= rate_min + 1e-10) {
          int j = i;
          while (j + 1 < grid && rate[j + 1] <= rate_min + 1e-10) ++j;
          const double step = 1.998 / (grid - 1);
          argmins.push_back(refine_min(
              [&](double x) { return rf.rate(x); },
              node(i) - step, node(j) + step));
          i = j + 1;
        } else {
          ++i;
        }
      }
      bool match = argmins.size() == minima.size();
      if (match)
        for (std::size_t k = 0; k < argmins.size(); ++k)
          match = match && std::fabs(argmins[k] - minima[k].m) <= 1e-7;
      if (!match) {
        ok = false;
        detail = "argmin sets of I and G differ";
      }
    }
  }

  {  // The limit depends on the invariant law only.
    const auto chain = [](double stay) {
      return FieldModel::markov_chain({-1.0, 1.0},
                                      {{stay, 1.0 - stay}, {1.0 - stay, stay}},
                                      {0.5, 0.5});
    };
    const FreeEnergy slow(chain(0.8), 1.1);
    const FreeEnergy fast(chain(0.3), 1.1);
    const FreeEnergy rot(FieldModel::rotation(0.41421356237309515, 0.8), 1.1);
    const FreeEnergy uni(FieldModel::uniform(0.8), 1.1);
    const double worst = std::max(
        sweep_max([&](double x) { return slow.value(x) - fast.value(x); },
                  -3.0, 3.0, 61),
        sweep_max([&](double x) { return rot.value(x) - uni.value(x); }, -3.0,
                  3.0, 61));
    if (worst > 1e-10) {
      ok = false;
      detail = fmt("limit free energies differ by %.3g (tol %.0e)", worst,
                   1e-10);
    }
  }

  report(9, "structural property suites", ok, detail);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
