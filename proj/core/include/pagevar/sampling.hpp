#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pagevar/dims.hpp"
#include "pagevar/running_moments.hpp"

namespace pagevar {

/// An eigenvalue sample of the reduced density matrix: m non-negative values
/// summing to one.
struct Spectrum {
  std::vector<double> values;
};

/// Von Neumann entropy -sum lambda log(lambda); values below 1e-300 are
/// treated as exact zeros (their limit contribution vanishes).
double entropy_of(const Spectrum& spectrum);

/// Deterministic engine for one batch: the (seed, batch) pair is mixed into
/// a single 64-bit state, so batches are independent streams and results do
/// not depend on how batches are scheduled across threads.
std::mt19937_64 stream_for_batch(std::uint64_t seed, int batch);

/// One spectrum draw: an m x n matrix of standard complex Gaussians G gives
/// W = G G^H, whose eigenvalues are clipped at zero and normalized by their
/// sum. Gaussians come from a fixed-consumption Box-Muller over the engine's
/// raw output, so draws are bit-reproducible across standard libraries.
Spectrum sample_spectrum(const SystemDims& dims, std::mt19937_64& rng);

/// Monte Carlo estimate of the entropy statistics plus the mean purity
/// E[sum lambda^2].
struct McEstimate {
  EntropyStats stats;
  double mean_se;        // standard error of the mean estimate
  double variance_se;    // delete-one-batch jackknife standard error
  double purity;
  double purity_se;
  long long samples;
  int batches;
  std::uint64_t seed;
};

/// Runs `samples` draws split over `batches` independent streams (possibly in
/// parallel; the merge order is fixed, so output is deterministic in
/// (dims, samples, seed, batches)). Requires samples >= 1000 and
/// 10 <= batches <= samples.
McEstimate estimate_stats(const SystemDims& dims, long long samples,
                          std::uint64_t seed, int batches = 32);

/// Independent check for m == 2: the joint eigenvalue density collapses to a
/// one-dimensional weight w(x) = (2x-1)^2 (x(1-x))^(n-2) on [0, 1], so
/// E[S^order] (order 1 or 2) reduces to adaptive quadrature. abs_tol bounds
/// the error of the returned ratio; convergence_error if unattainable.
double quadrature_oracle_m2(int n, int moment_order, double abs_tol = 1e-11);

}  // namespace pagevar
