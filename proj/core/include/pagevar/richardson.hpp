#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pagevar/errors.hpp"

namespace pagevar {

struct DerivativeResult {
  double value;
  double error_estimate;  // |last diagonal step| of the extrapolation table
};

namespace detail {

inline void check_step_params(double base_step, int levels) {
  if (!(base_step > 0.0) || base_step > 0.1) {
    throw std::invalid_argument("derivative: base_step must lie in (0, 0.1]");
  }
  if (levels < 1 || levels > 20) {
    throw std::invalid_argument("derivative: levels must lie in [1, 20]");
  }
}

}  // namespace detail

/// Richardson extrapolation of a sequence of stencil values taken at steps
/// h0, h0/2, h0/4, ... for a stencil whose error expands in even powers of h.
/// Needs at least two samples.
inline DerivativeResult richardson_extrapolate(std::vector<double> samples) {
  const int levels = static_cast<int>(samples.size()) - 1;
  if (levels < 1) {
    throw std::invalid_argument("richardson_extrapolate: need >= 2 samples");
  }
  // In-place triangular scheme; after pass j, samples[k] holds R[k][j].
  double prev_diag = samples[0];
  double diag = samples[0];
  for (int j = 1; j <= levels; ++j) {
    const double denom = std::pow(4.0, j) - 1.0;
    for (int k = levels; k >= j; --k) {
      samples[k] = samples[k] + (samples[k] - samples[k - 1]) / denom;
    }
    prev_diag = diag;
    diag = samples[j];
  }
  return {diag, std::abs(diag - prev_diag)};
}

/// Central first or second derivative of f at x, Richardson-extrapolated.
template <class F>
DerivativeResult central_derivative(F&& f, double x, int order,
                                    double base_step = 1e-2, int levels = 3) {
  detail::check_step_params(base_step, levels);
  if (order != 1 && order != 2) {
    throw std::invalid_argument("central_derivative: order must be 1 or 2");
  }
  std::vector<double> samples;
  samples.reserve(levels + 1);
  const double f0 = order == 2 ? f(x) : 0.0;
  for (int k = 0; k <= levels; ++k) {
    const double h = base_step / static_cast<double>(1 << k);
    if (order == 1) {
      samples.push_back((f(x + h) - f(x - h)) / (2.0 * h));
    } else {
      samples.push_back((f(x + h) - 2.0 * f0 + f(x - h)) / (h * h));
    }
  }
  return richardson_extrapolate(std::move(samples));
}

/// Mixed second partial d^2 f / (da db) at (a, b) from the four-point cross
/// stencil, Richardson-extrapolated over halved steps.
template <class F>
DerivativeResult mixed_partial(F&& f, double a, double b,
                               double base_step = 1e-2, int levels = 3) {
  detail::check_step_params(base_step, levels);
  std::vector<double> samples;
  samples.reserve(levels + 1);
  for (int k = 0; k <= levels; ++k) {
    const double h = base_step / static_cast<double>(1 << k);
    const double cross =
        f(a + h, b + h) - f(a + h, b - h) - f(a - h, b + h) + f(a - h, b - h);
    samples.push_back(cross / (4.0 * h * h));
  }
  return richardson_extrapolate(std::move(samples));
}

/// Unwraps a DerivativeResult, insisting the table settled to rel_tol
/// (relative to max(1, |value|), so targets near zero stay checkable).
inline double require_converged(const DerivativeResult& d, double rel_tol,
                                const char* what) {
  if (!(d.error_estimate <= rel_tol * std::max(1.0, std::abs(d.value)))) {
    throw convergence_error(std::string(what) +
                            ": extrapolation residual " +
                            std::to_string(d.error_estimate) +
                            " exceeds tolerance");
  }
  return d.value;
}

}  // namespace pagevar
