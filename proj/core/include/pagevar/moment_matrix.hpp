#pragma once

#include <vector>

#include "pagevar/dims.hpp"

namespace pagevar {

/// The m x m matrix X(r) whose traces encode ensemble moments of the power
/// sums p_r = sum_i lambda_i^r. Entries are finite for every real r > 0; the
/// defining sum over k truncates on its own because reciprocal-gamma factors
/// vanish at non-positive integers.
class MomentMatrix {
 public:
  MomentMatrix(SystemDims dims, double r, std::vector<double> entries);

  const SystemDims& dims() const { return dims_; }
  double r() const { return r_; }
  int size() const { return dims_.m; }
  double operator()(int i, int j) const { return entries_[i * dims_.m + j]; }
  const std::vector<double>& entries() const { return entries_; }

 private:
  SystemDims dims_;
  double r_;
  std::vector<double> entries_;
};

/// Builds X(r). Each term is a product of gamma factors accumulated in
/// signed-log form and only then materialized, so intermediate factorials
/// never overflow. Requires r > 0.
MomentMatrix build_moment_matrix(const SystemDims& dims, double r);

double trace(const MomentMatrix& mat);

/// tr(A B) for two matrices of the same dims.
double trace_product(const MomentMatrix& a, const MomentMatrix& b);

/// E[p_{r1} p_{r2}] over the ensemble, from the three traces of X.
struct TwoPointMoment {
  SystemDims dims;
  double r1;
  double r2;
  double value;
};
TwoPointMoment two_point_moment(const SystemDims& dims, double r1, double r2);

/// E[S^2] obtained by differentiating the two-point moment numerically at
/// r1 = r2 = 1 (Richardson-extrapolated mixed partial). Guards mn <= 200,
/// beyond which the float budget of the stencil is not defensible. Throws
/// convergence_error if the extrapolation table fails to settle to rel_tol
/// relative to max(1, |value|).
double second_moment_numeric(const SystemDims& dims, double base_step = 1e-2,
                             int levels = 3, double rel_tol = 1e-7);

}  // namespace pagevar
