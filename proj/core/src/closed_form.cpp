#include "pagevar/closed_form.hpp"

#include <algorithm>
#include <cmath>

#include "pagevar/errors.hpp"
#include "pagevar/polygamma.hpp"

namespace pagevar {

double unsimplifiable_sum(const SystemDims& dims) {
  double acc = 0.0;
  for (int k = 1; k <= dims.m; ++k) {
    acc += digamma(static_cast<double>(k + dims.n - dims.m)) / k;
  }
  return acc;
}

CoefficientSet coefficients(const SystemDims& dims) {
  const long long m = dims.m;
  const long long n = dims.n;
  const double p0n = digamma(static_cast<double>(n));
  const double p0n1 = p0n + 1.0 / static_cast<double>(n);  // psi0(n+1)

  CoefficientSet cs{dims,
                    static_cast<double>(m * n * (m + n)),
                    0.0,
                    std::nullopt,
                    static_cast<double>(m * n),
                    0.0,
                    static_cast<double>(m * n * (m + n - 1)),
                    0.0,
                    std::nullopt};

  cs.c2 = static_cast<double>(m * n * (m + n)) * p0n1 +
          static_cast<double>(m * (m * (m + 9 * n - 3) - 3 * n + 2)) / 6.0;
  cs.c5 = static_cast<double>(m * n) * p0n +
          static_cast<double>(m * (m + 1)) / 2.0;
  cs.c7 = static_cast<double>(m * n * (m + n - 1)) * p0n1 +
          static_cast<double>(m * (m - 1) * (m + 9 * n - 5)) / 6.0;

  if (n > m) {
    const double u = unsimplifiable_sum(dims);
    const double p0nm = digamma(static_cast<double>(n - m));
    const double p1nm = trigamma(static_cast<double>(n - m));
    const double p0m = digamma(static_cast<double>(m));
    const double p1n = trigamma(static_cast<double>(n));
    const double psi0_1 = -kEulerGamma;
    const double mn_mpn = static_cast<double>(m * n * (m + n));
    // Shared cubic multiplying psi0(n-m) in both c3 and c8.
    const double shared_cubic =
        static_cast<double>(m * m * m + 9 * m * m * n + 3 * m * m -
                            9 * m * n * n + 2 * m - n * n * n - 3 * n * n -
                            2 * n) /
        3.0;

    cs.c3 = 2.0 * mn_mpn * u +
            static_cast<double>(n * (9 * m * n - 3 * m + n * n - 3 * n + 2)) /
                3.0 * p0n +
            2.0 * mn_mpn * psi0_1 * p0nm + shared_cubic * p0nm -
            mn_mpn * (p0nm * p0nm + 2.0 * p0nm * (p0m - p0n) - p1nm) -
            static_cast<double>(
                m * (5 * m * m + 75 * m * n + 3 * m + 6 * n * n + 3 * n - 8)) /
                18.0;

    cs.c8 = 2.0 * mn_mpn * u +
            static_cast<double>(
                -3 * m * m + 9 * m * n * n - 9 * m * n - 3 * m + n * n * n -
                3 * n * n + 2 * n) /
                3.0 * p0n -
            static_cast<double>(m * n) * p0n * p0n + shared_cubic * p0nm +
            mn_mpn * (-p0nm * p0nm + 2.0 * (p0n - p0m + psi0_1) * p0nm +
                      p1nm - p1n) -
            static_cast<double>(
                m * (5 * m * m + 75 * m * n + 12 * m + 6 * n * n + 3 * n + 1)) /
                18.0;
  }
  return cs;
}

double page_mean(const SystemDims& dims) {
  const double mn = static_cast<double>(dims.mn());
  return digamma(mn + 1.0) - digamma(static_cast<double>(dims.n)) -
         static_cast<double>(dims.m + 1) / (2.0 * dims.n);
}

double vpo_variance(const SystemDims& dims) {
  const long long m = dims.m;
  const long long n = dims.n;
  const long long mn = dims.mn();
  return -trigamma(static_cast<double>(mn + 1)) +
         static_cast<double>(m + n) / static_cast<double>(mn + 1) *
             trigamma(static_cast<double>(n)) -
         static_cast<double>((m + 1) * (m + 2 * n + 1)) /
             (4.0 * static_cast<double>(n) * static_cast<double>(n) *
              static_cast<double>(mn + 1));
}

double reduced_c3_minus_c8(const SystemDims& dims) {
  const long long m = dims.m;
  const long long n = dims.n;
  const double p0n = digamma(static_cast<double>(n));
  const double p1n = trigamma(static_cast<double>(n));
  return static_cast<double>(m * (m + 2 * n + 1)) * p0n +
         static_cast<double>(m * n) * p0n * p0n +
         static_cast<double>(m * n * (m + n)) * p1n +
         static_cast<double>(m * (m + 1)) / 2.0;
}

TraceParts t_parts(const CoefficientSet& coeffs) {
  if (!coeffs.c3 || !coeffs.c8) {
    throw pole_error(
        "t_parts: c3/c8 are undefined at n == m; use the reduced difference");
  }
  const long long mn = coeffs.dims.mn();
  const double g =
      1.0 / (static_cast<double>(mn) * static_cast<double>(mn + 1));
  const double p0 = digamma(static_cast<double>(mn + 2));
  const double p1 = trigamma(static_cast<double>(mn + 2));
  const double c1 = coeffs.c1, c2 = coeffs.c2, c3 = *coeffs.c3;
  const double c4 = coeffs.c4, c5 = coeffs.c5, c6 = coeffs.c6;
  const double c7 = coeffs.c7, c8 = *coeffs.c8;
  return {
      g * (c3 - 2.0 * c2 * p0 + c1 * p0 * p0 - c1 * p1),
      g * (c5 * c5 - 2.0 * c4 * c5 * p0 + c4 * c4 * p0 * p0 - c4 * c4 * p1),
      g * (c6 * p1 - c6 * p0 * p0 + 2.0 * c7 * p0 - c8),
  };
}

double assembled_variance(const SystemDims& dims) {
  const CoefficientSet cs = coefficients(dims);
  const long long mn = dims.mn();
  const double g =
      1.0 / (static_cast<double>(mn) * static_cast<double>(mn + 1));
  const double p0 = digamma(static_cast<double>(mn + 2));
  const double p1 = trigamma(static_cast<double>(mn + 2));
  const double mean = page_mean(dims);
  // c4^2 - c6 + c1 collapses to mn(mn+1) exactly.
  const double bracket =
      cs.c5 * cs.c5 + reduced_c3_minus_c8(dims) +
      2.0 * (cs.c7 - cs.c4 * cs.c5 - cs.c2) * p0 +
      static_cast<double>(mn) * static_cast<double>(mn + 1) * (p0 * p0 - p1);
  return g * bracket - mean * mean;
}

double assembled_variance_full(const SystemDims& dims) {
  const double mean = page_mean(dims);
  return t_parts(coefficients(dims)).sum() - mean * mean;
}

EntropyStats exact_entropy_stats(const SystemDims& dims) {
  // Clamp m = 1 roundoff (order 1e-16) so the bundle honors mean >= 0 and
  // variance >= 0; for m >= 2 both quantities are genuinely positive.
  const double mean = std::max(page_mean(dims), 0.0);
  const double variance = std::max(assembled_variance(dims), 0.0);
  return {dims, mean, variance + mean * mean, variance};
}

}  // namespace pagevar
