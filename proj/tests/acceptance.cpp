// Acceptance gate: one line per criterion, [PASS] or [FAIL], with the
// observed worst residual and elapsed time against the stated budget.
// Exit code is the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pagevar/closed_form.hpp"
#include "pagevar/moment_matrix.hpp"
#include "pagevar/polygamma.hpp"
#include "pagevar/richardson.hpp"
#include "pagevar/sampling.hpp"

using namespace pagevar;

namespace {

struct Criterion {
  std::string label;
  double budget_seconds;
  std::function<bool(std::string&)> run;
};

double rel_dev(double numeric, double reference) {
  return std::abs(numeric - reference) / std::max(1.0, std::abs(reference));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool check_assembly_identity(std::string& detail) {
  double worst = 0.0;
  for (int m = 1; m <= 12; ++m) {
    for (int n = m; n <= 12; ++n) {
      const SystemDims d(m, n);
      worst = std::max(worst,
                       std::abs(assembled_variance(d) - vpo_variance(d)));
    }
  }
  detail = "max |assembled - compact| = " + fmt(worst) + " over m<=n<=12";
  return worst <= 1e-10;
}

bool check_numeric_second_moment(std::string& detail) {
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m) {
    for (int n = m; n <= 8; ++n) {
      const SystemDims d(m, n);
      const double numeric = second_moment_numeric(d);
      const double closed = exact_entropy_stats(d).second_moment;
      worst = std::max(worst, rel_dev(numeric, closed));
    }
  }
  detail = "max deviation = " + fmt(worst) + " over m<=n<=8";
  return worst <= 1e-6;
}

bool check_coefficient_derivatives(std::string& detail) {
  double worst_transcendental = 0.0;
  double worst_integer = 0.0;
  bool integers_exact = true;
  for (int m = 2; m <= 7; ++m) {
    for (int n = m + 1; n <= 8; ++n) {
      const SystemDims d(m, n);
      const CoefficientSet cs = coefficients(d);
      auto trace_at = [&d](double u) {
        return trace(build_moment_matrix(d, u));
      };
      auto tp = [&d](double s1, double s2) {
        return trace_product(build_moment_matrix(d, s1),
                             build_moment_matrix(d, s2));
      };
      auto upd = [&](double numeric, double closed) {
        worst_transcendental =
            std::max(worst_transcendental, rel_dev(numeric, closed));
      };
      upd(central_derivative(trace_at, 2.0, 1).value, cs.c2);
      upd(central_derivative(trace_at, 2.0, 2).value, *cs.c3);
      upd(central_derivative(trace_at, 1.0, 1).value, cs.c5);
      upd(central_derivative([&](double s) { return tp(s, 1.0); }, 1.0, 1)
              .value,
          cs.c7);
      upd(mixed_partial(tp, 1.0, 1.0).value, *cs.c8);

      // Integer coefficients: exact in the closed-form path, and the trace
      // path reproduces them to float accuracy.
      const long long mn = d.mn();
      integers_exact = integers_exact &&
                       cs.c1 == static_cast<double>(mn * (m + n)) &&
                       cs.c4 == static_cast<double>(mn) &&
                       cs.c6 == static_cast<double>(mn * (m + n - 1));
      const MomentMatrix x1 = build_moment_matrix(d, 1.0);
      worst_integer = std::max(
          {worst_integer, rel_dev(trace(build_moment_matrix(d, 2.0)), cs.c1),
           rel_dev(trace(x1), cs.c4), rel_dev(trace_product(x1, x1), cs.c6)});
    }
  }
  detail = "max c2/c3/c5/c7/c8 deviation = " + fmt(worst_transcendental) +
           "; integer coefficients exact = " +
           (integers_exact ? "yes" : "no") +
           ", trace route deviation = " + fmt(worst_integer);
  return worst_transcendental <= 1e-6 && integers_exact &&
         worst_integer <= 1e-10;
}

bool check_quadrature_oracle(std::string& detail) {
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const EntropyStats cf = exact_entropy_stats(SystemDims(2, n));
    worst = std::max(worst, std::abs(quadrature_oracle_m2(n, 1) - cf.mean));
    worst = std::max(worst,
                     std::abs(quadrature_oracle_m2(n, 2) - cf.second_moment));
  }
  detail = "max |quadrature - closed| = " + fmt(worst) + " for n = 2..8";
  return worst <= 1e-9;
}

bool check_monte_carlo(std::string& detail) {
  const SystemDims dims_list[] = {SystemDims(2, 2), SystemDims(2, 4),
                                  SystemDims(3, 3), SystemDims(3, 5),
                                  SystemDims(4, 4)};
  double worst_sigma = 0.0;
  bool ok = true;
  for (const SystemDims& d : dims_list) {
    const McEstimate est = estimate_stats(d, 100000, 42, 32);
    const EntropyStats cf = exact_entropy_stats(d);
    const double exact_purity = static_cast<double>(d.m + d.n) /
                                static_cast<double>(d.mn() + 1);
    const double s_mean = std::abs(est.stats.mean - cf.mean) / est.mean_se;
    const double s_var =
        std::abs(est.stats.variance - cf.variance) / est.variance_se;
    const double s_pur = std::abs(est.purity - exact_purity) / est.purity_se;
    worst_sigma = std::max({worst_sigma, s_mean, s_var, s_pur});
    ok = ok && s_mean <= 4.0 && s_var <= 4.0 && s_pur <= 4.0;
  }
  detail = "worst |estimate - exact| = " + fmt(worst_sigma) +
           " standard errors (bound 4) at 1e5 samples each";
  return ok;
}

bool check_degenerate_side(std::string& detail) {
  double worst = 0.0;
  bool sampler_exact = true;
  for (int n = 1; n <= 20; ++n) {
    const SystemDims d(1, n);
    worst = std::max({worst, std::abs(page_mean(d)),
                      std::abs(vpo_variance(d)),
                      std::abs(assembled_variance(d))});
  }
  for (int n : {1, 4, 9}) {
    const McEstimate est = estimate_stats(SystemDims(1, n), 1000, 42, 10);
    sampler_exact =
        sampler_exact && est.stats.mean == 0.0 && est.stats.variance == 0.0;
  }
  detail = "max closed-form magnitude = " + fmt(worst) +
           " for n <= 20; sampler exactly zero = " +
           (sampler_exact ? "yes" : "no");
  return worst <= 1e-14 && sampler_exact;
}

bool check_unit_power_sum(std::string& detail) {
  double worst = 0.0;
  for (int m = 1; m <= 12; ++m) {
    for (int n = m; n <= 12; ++n) {
      worst = std::max(
          worst, std::abs(two_point_moment(SystemDims(m, n), 1.0, 1.0).value -
                          1.0));
    }
  }
  detail = "max |E[p1 p1] - 1| = " + fmt(worst) + " over m<=n<=12";
  return worst <= 1e-10;
}

bool check_cancellation(std::string& detail) {
  double worst_full = 0.0;
  for (int m = 1; m <= 11; ++m) {
    for (int n = m + 1; n <= 12; ++n) {
      const SystemDims d(m, n);
      worst_full = std::max(
          worst_full,
          std::abs(assembled_variance_full(d) - assembled_variance(d)));
    }
  }
  double worst_square = 0.0;
  for (int m = 1; m <= 12; ++m) {
    const SystemDims d(m, m);
    worst_square =
        std::max(worst_square, std::abs(assembled_variance(d) - vpo_variance(d)));
  }
  detail = "max |full - reduced| = " + fmt(worst_full) +
           " for n > m; square-case residual = " + fmt(worst_square);
  return worst_full <= 1e-9 && worst_square <= 1e-10;
}

bool check_special_function_invariants(std::string& detail) {
  std::mt19937_64 rng(1812);
  std::uniform_real_distribution<double> dist(0.05, 60.0);
  double worst_rec = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    worst_rec = std::max(
        worst_rec, std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) /
                       (1.0 + std::abs(digamma(x))));
    worst_rec = std::max(
        worst_rec, std::abs(trigamma(x + 1.0) - trigamma(x) + 1.0 / (x * x)) /
                       (1.0 + trigamma(x)));
  }

  bool recip_ok = true;
  for (int l = 0; l <= 3; ++l) {
    recip_ok = recip_ok && std::abs(recip_gamma(-l + 1e-6)) < 1e-5 &&
               std::abs(recip_gamma(-l - 1e-6)) < 1e-5 &&
               recip_gamma(static_cast<double>(-l)) == 0.0;
  }

  // Laurent data at the poles against a direct gamma probe.
  bool expansion_ok = true;
  for (int l = 0; l <= 6; ++l) {
    const NegIntExpansion e = neg_int_expansion_gamma(l);
    for (double eps : {1e-4, -1e-4}) {
      const double g = gamma_value(-static_cast<double>(l) + eps);
      const double remainder = (g - e.leading / eps - e.sub_leading) * eps;
      expansion_ok =
          expansion_ok && std::abs(remainder) <= 5e-3 * std::abs(e.leading);
    }
  }

  double worst_fd = 0.0;
  for (double x : {0.7, 1.3, 2.9, 7.7, 15.2, 40.1}) {
    const double h = 1e-5;
    const double fd = (log_gamma_signed(x + h).log_magnitude -
                       log_gamma_signed(x - h).log_magnitude) /
                      (2.0 * h);
    worst_fd = std::max(worst_fd, rel_dev(fd, digamma(x)));
  }

  detail = "recurrence residual = " + fmt(worst_rec) +
           "; reciprocal-gamma zeros/continuity = " +
           (recip_ok ? "yes" : "no") + "; pole expansion = " +
           (expansion_ok ? "yes" : "no") +
           "; log-gamma derivative probe = " + fmt(worst_fd);
  return worst_rec <= 1e-12 && recip_ok && expansion_ok && worst_fd <= 1e-9;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"assembled variance equals the compact closed form (<= 1e-10)", 1.0,
       check_assembly_identity},
      {"numeric-derivative second moment matches closed form (<= 1e-6 rel)",
       30.0, check_numeric_second_moment},
      {"coefficients match their derivative definitions (<= 1e-6 rel)", 30.0,
       check_coefficient_derivatives},
      {"m = 2 quadrature oracle matches closed forms (<= 1e-9)", 5.0,
       check_quadrature_oracle},
      {"Monte Carlo agrees within 4 standard errors", 120.0,
       check_monte_carlo},
      {"m = 1 degenerates to zero in every path (<= 1e-14)", 10.0,
       check_degenerate_side},
      {"unit power sums have unit expectation (<= 1e-10)", 10.0,
       check_unit_power_sum},
      {"full cancellation assembly agrees with reduced (<= 1e-9)", 10.0,
       check_cancellation},
      {"special-function recurrence and pole invariants hold", 10.0,
       check_special_function_invariants},
  };

  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const bool in_budget = elapsed <= c.budget_seconds;
    if (!in_budget) {
      detail += " [over budget]";
    }
    const bool pass = ok && in_budget;
    std::printf("[%s] %d. %s | %s | %.2fs of %.0fs budget\n",
                pass ? "PASS" : "FAIL", index, c.label.c_str(), detail.c_str(),
                elapsed, c.budget_seconds);
    if (!pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  } else {
    std::printf("all %zu criteria passed\n", criteria.size());
  }
  return failures;
}
