#include "pagevar/polygamma.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace pagevar {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2*pi)/2

// Stirling-series tails, valid for arguments >= kAsymptoticCut.
// log Gamma: sum of B_{2k} / (2k(2k-1) x^{2k-1}).
constexpr double kLogGammaTail[] = {
    1.0 / 12,   -1.0 / 360,        1.0 / 1260, -1.0 / 1680,
    1.0 / 1188, -691.0 / 360360,   1.0 / 156,  -3617.0 / 122400,
};
// psi0: log x - 1/(2x) - sum of B_{2k} / (2k x^{2k}).
constexpr double kDigammaTail[] = {
    1.0 / 12,  -1.0 / 120,       1.0 / 252, -1.0 / 240,
    1.0 / 132, -691.0 / 32760,   1.0 / 12,  -3617.0 / 8160,
};
// psi1: 1/x + 1/(2x^2) + sum of B_{2k} / x^{2k+1}.
constexpr double kTrigammaTail[] = {
    1.0 / 6,  -1.0 / 30,        1.0 / 42, -1.0 / 30,
    5.0 / 66, -691.0 / 2730,    7.0 / 6,  -3617.0 / 510,
};
constexpr double kAsymptoticCut = 12.0;

double horner_even(const double (&coeff)[8], double u2) {
  double p = coeff[7];
  for (int k = 6; k >= 0; --k) p = coeff[k] + p * u2;
  return p;
}

// sin(pi*x) and cos(pi*x) with the integer part removed before multiplying by
// pi, so accuracy does not degrade for large |x|.
double sin_pi(double x) {
  const double k = std::round(x);
  const double s = std::sin(kPi * (x - k));
  return std::fmod(k, 2.0) == 0.0 ? s : -s;
}

double cos_pi(double x) {
  const double k = std::round(x);
  const double c = std::cos(kPi * (x - k));
  return std::fmod(k, 2.0) == 0.0 ? c : -c;
}

// log Gamma(x) for x >= 0.5: lift into the asymptotic regime, then Stirling.
double log_gamma_positive(double x) {
  double shift = 0.0;
  while (x < kAsymptoticCut) {
    shift -= std::log(x);
    x += 1.0;
  }
  const double u = 1.0 / x;
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi +
         u * horner_even(kLogGammaTail, u * u) + shift;
}

double digamma_positive(double x) {
  double shift = 0.0;
  while (x < kAsymptoticCut) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double u = 1.0 / x;
  const double u2 = u * u;
  return std::log(x) - 0.5 * u - u2 * horner_even(kDigammaTail, u2) + shift;
}

double trigamma_positive(double x) {
  double shift = 0.0;
  while (x < kAsymptoticCut) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  const double u = 1.0 / x;
  const double u2 = u * u;
  return u + 0.5 * u2 + u * u2 * horner_even(kTrigammaTail, u2) + shift;
}

[[noreturn]] void throw_pole(const char* fn, double x) {
  throw pole_error(std::string(fn) + ": pole at non-positive integer, x=" +
                   std::to_string(x));
}

}  // namespace

bool is_nonpositive_integer(double x, double tol) {
  const double r = std::round(x);
  return r <= 0.0 && std::abs(x - r) <= tol;
}

SignedLogValue SignedLogValue::of(double v) {
  if (v == 0.0) return zero();
  return {std::log(std::abs(v)), v > 0.0 ? +1 : -1};
}

double SignedLogValue::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_magnitude);
}

SignedLogValue SignedLogValue::reciprocal() const {
  if (sign == 0) throw std::domain_error("SignedLogValue: reciprocal of zero");
  return {-log_magnitude, sign};
}

SignedLogValue log_gamma_signed(double x) {
  if (is_nonpositive_integer(x)) throw_pole("log_gamma_signed", x);
  if (x >= 0.5) return {log_gamma_positive(x), +1};
  // Euler reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const double s = sin_pi(x);
  return {std::log(kPi) - std::log(std::abs(s)) - log_gamma_positive(1.0 - x),
          s > 0.0 ? +1 : -1};
}

double gamma_value(double x) { return log_gamma_signed(x).value(); }

SignedLogValue recip_gamma_signed(double x) {
  if (is_nonpositive_integer(x)) return SignedLogValue::zero();
  return log_gamma_signed(x).reciprocal();
}

double recip_gamma(double x) { return recip_gamma_signed(x).value(); }

double digamma(double x) {
  if (is_nonpositive_integer(x)) throw_pole("digamma", x);
  if (x < 0.5) {
    return digamma_positive(1.0 - x) - kPi * cos_pi(x) / sin_pi(x);
  }
  return digamma_positive(x);
}

double trigamma(double x) {
  if (is_nonpositive_integer(x)) throw_pole("trigamma", x);
  if (x < 0.5) {
    const double s = sin_pi(x);
    return -trigamma_positive(1.0 - x) + kPi * kPi / (s * s);
  }
  return trigamma_positive(x);
}

double digamma_shift(double base, int steps) {
  if (steps < 0) throw std::invalid_argument("digamma_shift: steps must be >= 0");
  double acc = digamma(base);  // rejects a base sitting on a pole
  for (int k = 0; k < steps; ++k) {
    const double t = base + k;
    if (is_nonpositive_integer(t)) throw_pole("digamma_shift", t);
    acc += 1.0 / t;
  }
  return acc;
}

double trigamma_shift(double base, int steps) {
  if (steps < 0) throw std::invalid_argument("trigamma_shift: steps must be >= 0");
  double acc = trigamma(base);
  for (int k = 0; k < steps; ++k) {
    const double t = base + k;
    if (is_nonpositive_integer(t)) throw_pole("trigamma_shift", t);
    acc -= 1.0 / (t * t);
  }
  return acc;
}

NegIntExpansion neg_int_expansion_gamma(int l) {
  if (l < 0) throw std::invalid_argument("neg_int_expansion_gamma: l must be >= 0");
  double fact = 1.0;
  for (int i = 2; i <= l; ++i) fact *= i;
  const double leading = (l % 2 == 0 ? 1.0 : -1.0) / fact;
  return {l, leading, leading * digamma(static_cast<double>(l) + 1.0)};
}

}  // namespace pagevar
