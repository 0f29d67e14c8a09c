#include "pagevar/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "pagevar/jacobi.hpp"
#include "pagevar/quadrature.hpp"

namespace pagevar {
namespace {

using cd = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// 53-bit uniform in (0, 1]; never zero, so log() below is safe.
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
}

// 53-bit uniform in [0, 1).
double uniform_half_open(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

struct GaussPair {
  double a, b;
};

// Box-Muller with fixed consumption (exactly two engine draws per pair),
// rather than std::normal_distribution, whose algorithm is
// implementation-defined and would break cross-platform reproducibility.
GaussPair gauss_pair(std::mt19937_64& rng) {
  const double u = uniform_open(rng);
  const double v = uniform_half_open(rng);
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

double purity_of(const Spectrum& s) {
  double p = 0.0;
  for (double lam : s.values) p += lam * lam;
  return p;
}

struct BatchMoments {
  RunningMoments entropy;
  RunningMoments purity;
};

}  // namespace

double entropy_of(const Spectrum& spectrum) {
  double s = 0.0;
  for (double lam : spectrum.values) {
    if (lam > 1e-300) s -= lam * std::log(lam);
  }
  return s;
}

std::mt19937_64 stream_for_batch(std::uint64_t seed, int batch) {
  const std::uint64_t mixed = splitmix64(
      seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(batch) + 1));
  return std::mt19937_64(mixed);
}

Spectrum sample_spectrum(const SystemDims& dims, std::mt19937_64& rng) {
  const int m = dims.m;
  const int n = dims.n;
  constexpr double inv_sqrt2 = 0.70710678118654752440;

  std::vector<cd> g(static_cast<size_t>(m) * n);
  for (cd& z : g) {
    const GaussPair p = gauss_pair(rng);
    z = cd(p.a * inv_sqrt2, p.b * inv_sqrt2);
  }

  // W = G G^H, Hermitian by construction; fill the upper triangle and mirror.
  std::vector<cd> w(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      cd acc = 0.0;
      for (int a = 0; a < n; ++a) {
        acc += g[static_cast<size_t>(i) * n + a] *
               std::conj(g[static_cast<size_t>(j) * n + a]);
      }
      if (i == j) acc = cd(acc.real(), 0.0);
      w[static_cast<size_t>(i) * m + j] = acc;
      w[static_cast<size_t>(j) * m + i] = std::conj(acc);
    }
  }

  std::vector<double> eig = hermitian_eigenvalues(std::move(w), m);
  double sum = 0.0;
  for (double& e : eig) {
    e = std::max(e, 0.0);  // W is PSD; clip eigenvalue roundoff
    sum += e;
  }
  for (double& e : eig) e /= sum;
  return Spectrum{std::move(eig)};
}

McEstimate estimate_stats(const SystemDims& dims, long long samples,
                          std::uint64_t seed, int batches) {
  if (samples < 1000) {
    throw std::invalid_argument("estimate_stats: need samples >= 1000");
  }
  if (batches < 10 || static_cast<long long>(batches) > samples) {
    throw std::invalid_argument(
        "estimate_stats: need 10 <= batches <= samples");
  }

  std::vector<BatchMoments> acc(batches);
  auto run_batch = [&](int b) {
    const long long quota =
        samples / batches + (b < samples % batches ? 1 : 0);
    std::mt19937_64 rng = stream_for_batch(seed, b);
    for (long long i = 0; i < quota; ++i) {
      const Spectrum s = sample_spectrum(dims, rng);
      acc[b].entropy.add(entropy_of(s));
      acc[b].purity.add(purity_of(s));
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(
      std::min<unsigned>(hw, static_cast<unsigned>(batches)));
  if (workers <= 1) {
    for (int b = 0; b < batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int b = w; b < batches; b += workers) run_batch(b);
      });
    }
    for (std::thread& t : pool) t.join();
  }

  RunningMoments entropy_all;
  RunningMoments purity_all;
  for (const BatchMoments& bm : acc) {
    entropy_all = RunningMoments::merged(entropy_all, bm.entropy);
    purity_all = RunningMoments::merged(purity_all, bm.purity);
  }

  // Delete-one-batch jackknife for the variance estimator's standard error.
  std::vector<double> loo(batches);
  for (int b = 0; b < batches; ++b) {
    RunningMoments rest;
    for (int o = 0; o < batches; ++o) {
      if (o != b) rest = RunningMoments::merged(rest, acc[o].entropy);
    }
    loo[b] = rest.sample_variance();
  }
  double loo_mean = 0.0;
  for (double v : loo) loo_mean += v;
  loo_mean /= batches;
  double loo_ss = 0.0;
  for (double v : loo) loo_ss += (v - loo_mean) * (v - loo_mean);
  const double variance_se =
      std::sqrt(static_cast<double>(batches - 1) / batches * loo_ss);

  const double mean = entropy_all.mean();
  const double variance = entropy_all.sample_variance();
  McEstimate out{
      EntropyStats{dims, mean, variance + mean * mean, variance},
      entropy_all.mean_standard_error(),
      variance_se,
      purity_all.mean(),
      purity_all.mean_standard_error(),
      samples,
      batches,
      seed,
  };
  return out;
}

double quadrature_oracle_m2(int n, int moment_order, double abs_tol) {
  if (n < 2) {
    throw std::invalid_argument("quadrature_oracle_m2: require n >= 2");
  }
  if (moment_order != 1 && moment_order != 2) {
    throw std::invalid_argument("quadrature_oracle_m2: moment_order is 1 or 2");
  }
  if (!(abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature_oracle_m2: abs_tol must be > 0");
  }

  auto weight = [n](double x) {
    const double d = 2.0 * x - 1.0;
    return d * d * std::pow(x * (1.0 - x), n - 2);
  };
  auto entropy1d = [](double x) {
    double s = 0.0;
    if (x > 0.0 && x < 1.0) {
      s = -x * std::log(x) - (1.0 - x) * std::log(1.0 - x);
    }
    return s;
  };
  auto integrand = [&](double x) {
    const double s = entropy1d(x);
    return weight(x) * (moment_order == 1 ? s : s * s);
  };

  const QuadratureResult num = integrate_adaptive(integrand, 0.0, 1.0, 1e-13);
  const QuadratureResult den = integrate_adaptive(weight, 0.0, 1.0, 1e-13);
  const double ratio = num.value / den.value;
  const double err =
      (num.error_estimate + std::abs(ratio) * den.error_estimate) /
      std::abs(den.value);
  if (!(err <= abs_tol)) {
    throw convergence_error("quadrature_oracle_m2: tolerance not met");
  }
  return ratio;
}

}  // namespace pagevar
