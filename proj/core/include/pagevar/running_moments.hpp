#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace pagevar {

/// Numerically stable streaming accumulator for mean and central moments up
/// to order four. Two accumulators can be merged exactly (up to roundoff), so
/// batched or parallel accumulation reproduces the single-stream result; the
/// third moment is carried because the fourth-moment merge needs it.
class RunningMoments {
 public:
  void add(double x) {
    const double n1 = static_cast<double>(count_);
    ++count_;
    const double n = static_cast<double>(count_);
    const double delta = x - mean_;
    const double dn = delta / n;
    const double dn2 = dn * dn;
    const double term1 = delta * dn * n1;
    mean_ += dn;
    m4_ += term1 * dn2 * (n * n - 3.0 * n + 3.0) + 6.0 * dn2 * m2_ -
           4.0 * dn * m3_;
    m3_ += term1 * dn * (n - 2.0) - 3.0 * dn * m2_;
    m2_ += term1;
  }

  static RunningMoments merged(const RunningMoments& a, const RunningMoments& b) {
    if (a.count_ == 0) return b;
    if (b.count_ == 0) return a;
    const double na = static_cast<double>(a.count_);
    const double nb = static_cast<double>(b.count_);
    const double n = na + nb;
    const double delta = b.mean_ - a.mean_;
    const double d2 = delta * delta;

    RunningMoments out;
    out.count_ = a.count_ + b.count_;
    out.mean_ = a.mean_ + delta * nb / n;
    out.m2_ = a.m2_ + b.m2_ + d2 * na * nb / n;
    out.m3_ = a.m3_ + b.m3_ + d2 * delta * na * nb * (na - nb) / (n * n) +
              3.0 * delta * (na * b.m2_ - nb * a.m2_) / n;
    out.m4_ = a.m4_ + b.m4_ +
              d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
              6.0 * d2 * (na * na * b.m2_ + nb * nb * a.m2_) / (n * n) +
              4.0 * delta * (na * b.m3_ - nb * a.m3_) / n;
    return out;
  }

  std::int64_t count() const { return count_; }

  double mean() const {
    require_nonempty();
    return mean_;
  }

  /// Central moment sums: m2 = sum (x - mean)^2, and so on.
  double m2() const { return m2_; }
  double m3() const { return m3_; }
  double m4() const { return m4_; }

  /// Unbiased sample variance; zero for fewer than two observations.
  double sample_variance() const {
    require_nonempty();
    return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
  }

  double mean_standard_error() const {
    require_nonempty();
    return std::sqrt(sample_variance() / static_cast<double>(count_));
  }

 private:
  void require_nonempty() const {
    if (count_ == 0) {
      throw std::logic_error("RunningMoments: no observations");
    }
  }

  std::int64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

}  // namespace pagevar
