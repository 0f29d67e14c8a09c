#pragma once

#include "pagevar/errors.hpp"

namespace pagevar {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Absolute distance below which an argument counts as sitting on a
/// non-positive-integer pole of the gamma family.
inline constexpr double kPoleTol = 1e-12;

/// True when x is within tol of some integer <= 0.
bool is_nonpositive_integer(double x, double tol = kPoleTol);

/// A real number stored as log|v| plus a sign, so that products of huge and
/// tiny factors can be accumulated without overflow. sign == 0 encodes an
/// exact zero, in which case log_magnitude is meaningless.
struct SignedLogValue {
  double log_magnitude;
  int sign;  // -1, 0, +1

  static SignedLogValue zero() { return {0.0, 0}; }
  static SignedLogValue of(double v);

  bool is_zero() const { return sign == 0; }
  double value() const;

  /// Multiplicative inverse. Throws std::domain_error for an exact zero.
  SignedLogValue reciprocal() const;

  friend SignedLogValue operator*(const SignedLogValue& a, const SignedLogValue& b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.log_magnitude + b.log_magnitude, a.sign * b.sign};
  }
};

/// log|Gamma(x)| with the sign of Gamma(x). Stirling series for large
/// arguments, upward recurrence below the asymptotic cut, Euler reflection
/// for x < 0.5. Throws pole_error at non-positive integers.
SignedLogValue log_gamma_signed(double x);

/// Gamma(x) as a plain double; overflows to +/-inf for large x.
double gamma_value(double x);

/// 1/Gamma(x), which is entire: returns exactly 0.0 at non-positive integers
/// instead of throwing.
double recip_gamma(double x);
SignedLogValue recip_gamma_signed(double x);

/// psi0 and psi1. Both throw pole_error at non-positive integers and use
/// reflection for x < 0.5, recurrence plus an asymptotic tail otherwise.
double digamma(double x);
double trigamma(double x);

/// psi0(base + steps) via the exact telescoping sum of 1/(base+k); cheaper
/// and cancellation-free when many shifted values share a base. Throws
/// pole_error if base or any intermediate base+k is a non-positive integer.
double digamma_shift(double base, int steps);
/// psi1(base + steps) via telescoping -1/(base+k)^2.
double trigamma_shift(double base, int steps);

/// First two coefficients of the Laurent expansion of Gamma at -l:
/// Gamma(-l + eps) = leading/eps + sub_leading + O(eps).
/// leading = (-1)^l / l!, sub_leading = leading * psi0(l+1).
struct NegIntExpansion {
  int l;
  double leading;
  double sub_leading;
};
NegIntExpansion neg_int_expansion_gamma(int l);

}  // namespace pagevar
