#include "pagevar/moment_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pagevar/polygamma.hpp"
#include "pagevar/richardson.hpp"

namespace pagevar {

MomentMatrix::MomentMatrix(SystemDims dims, double r, std::vector<double> entries)
    : dims_(dims), r_(r), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<size_t>(dims_.m) * dims_.m) {
    throw std::invalid_argument("MomentMatrix: entry count != m*m");
  }
}

MomentMatrix build_moment_matrix(const SystemDims& dims, double r) {
  if (!(r > 0.0)) {
    throw std::invalid_argument("build_moment_matrix: require r > 0");
  }
  const int m = dims.m;
  const int n = dims.n;
  std::vector<double> entries(static_cast<size_t>(m) * m);

  const SignedLogValue gamma_r1_sq =
      log_gamma_signed(r + 1.0) * log_gamma_signed(r + 1.0);

  for (int i = 0; i < m; ++i) {
    const SignedLogValue row_factor =
        gamma_r1_sq * log_gamma_signed(static_cast<double>(n - m + i + 1)).reciprocal();
    for (int j = 0; j < m; ++j) {
      const SignedLogValue prefactor =
          row_factor * log_gamma_signed(static_cast<double>(j + 1));
      double acc = 0.0;
      for (int k = 0; k < m; ++k) {
        // recip_gamma_signed is exactly zero once i-k+1 or j-k+1 hits a
        // non-positive integer, which truncates the sum at k <= min(i, j).
        const SignedLogValue term =
            log_gamma_signed(n - m + r + k + 1.0) *
            recip_gamma_signed(static_cast<double>(k + 1)) *
            recip_gamma_signed(static_cast<double>(i - k + 1)) *
            recip_gamma_signed(static_cast<double>(j - k + 1)) *
            recip_gamma_signed(r + k - i + 1.0) *
            recip_gamma_signed(r + k - j + 1.0);
        acc += (prefactor * term).value();
      }
      entries[static_cast<size_t>(i) * m + j] = acc;
    }
  }
  return MomentMatrix(dims, r, std::move(entries));
}

double trace(const MomentMatrix& mat) {
  double t = 0.0;
  for (int i = 0; i < mat.size(); ++i) t += mat(i, i);
  return t;
}

double trace_product(const MomentMatrix& a, const MomentMatrix& b) {
  if (!(a.dims() == b.dims())) {
    throw std::invalid_argument("trace_product: dims mismatch");
  }
  const int m = a.size();
  double t = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) t += a(i, j) * b(j, i);
  }
  return t;
}

TwoPointMoment two_point_moment(const SystemDims& dims, double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) {
    throw std::invalid_argument("two_point_moment: require r1, r2 > 0");
  }
  const double mn = static_cast<double>(dims.mn());
  const MomentMatrix x12 = build_moment_matrix(dims, r1 + r2);
  const MomentMatrix x1 = build_moment_matrix(dims, r1);
  const MomentMatrix x2 =
      r1 == r2 ? x1 : build_moment_matrix(dims, r2);

  // Gamma(mn) / Gamma(mn + r1 + r2); both arguments are positive.
  const double ratio = std::exp(log_gamma_signed(mn).log_magnitude -
                                log_gamma_signed(mn + r1 + r2).log_magnitude);
  const double value =
      ratio * (trace(x12) + trace(x1) * trace(x2) - trace_product(x1, x2));
  return {dims, r1, r2, value};
}

double second_moment_numeric(const SystemDims& dims, double base_step,
                             int levels, double rel_tol) {
  if (dims.mn() > 200) {
    throw std::invalid_argument(
        "second_moment_numeric: mn > 200 exceeds the stencil's float budget");
  }
  auto f = [&dims](double a, double b) {
    return two_point_moment(dims, a, b).value;
  };
  const DerivativeResult d = mixed_partial(f, 1.0, 1.0, base_step, levels);
  return require_converged(d, rel_tol, "second_moment_numeric");
}

}  // namespace pagevar
