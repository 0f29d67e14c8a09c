#pragma once

#include <optional>

#include "pagevar/dims.hpp"

namespace pagevar {

/// The eight coefficients that assemble the exact second moment of the
/// entanglement entropy. c1, c4, c6 are integers; the rest carry polygamma
/// values. c3 and c8 individually diverge at n == m (each contains psi0(n-m)
/// and psi1(n-m)), so they are only populated for n > m; their difference
/// stays finite and is provided by reduced_c3_minus_c8 for every m <= n.
struct CoefficientSet {
  SystemDims dims;
  double c1;
  double c2;
  std::optional<double> c3;
  double c4;
  double c5;
  double c6;
  double c7;
  std::optional<double> c8;
};

CoefficientSet coefficients(const SystemDims& dims);

/// sum_{k=1}^{m} psi0(k + n - m) / k, the one piece of c3 and c8 with no
/// closed polygamma form.
double unsimplifiable_sum(const SystemDims& dims);

/// Exact mean entropy: psi0(mn + 1) - psi0(n) - (m + 1) / (2n).
double page_mean(const SystemDims& dims);

/// Exact variance in its published compact form:
/// -psi1(mn+1) + (m+n)/(mn+1) * psi1(n) - (m+1)(m+2n+1) / (4 n^2 (mn+1)).
double vpo_variance(const SystemDims& dims);

/// c3 - c8 after the psi(n-m) cancellations:
/// m(m+2n+1) psi0(n) + mn psi0(n)^2 + mn(m+n) psi1(n) + m(m+1)/2.
/// Finite for all m <= n, including n == m.
double reduced_c3_minus_c8(const SystemDims& dims);

/// The three trace contributions to E[S^2]; their sum is the second moment.
/// Requires the literal c3/c8, so n > m: throws pole_error otherwise.
struct TraceParts {
  double t_a;
  double t_b;
  double t_c;
  double sum() const { return t_a + t_b + t_c; }
};
TraceParts t_parts(const CoefficientSet& coeffs);

/// Variance assembled from the coefficient bracket using the reduced
/// difference, so it is valid for every m <= n. Agrees with vpo_variance.
double assembled_variance(const SystemDims& dims);

/// Same assembly but through the literal c3 and c8 (n > m only); exercises
/// the large cancellation that the reduced path avoids.
double assembled_variance_full(const SystemDims& dims);

/// Mean, variance (assembled) and the implied second moment. Both mean and
/// variance are clamped at zero: the raw values can round to -1e-16 when
/// m == 1, where the true statistics are exactly zero.
EntropyStats exact_entropy_stats(const SystemDims& dims);

}  // namespace pagevar
