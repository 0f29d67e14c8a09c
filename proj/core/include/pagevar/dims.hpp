#pragma once

#include <stdexcept>
#include <string>

namespace pagevar {

/// Subsystem dimensions of a bipartite system, ordered so that m <= n.
/// The reduced density matrix lives on the m-dimensional side.
struct SystemDims {
  int m;
  int n;

  SystemDims(int m_, int n_) : m(m_), n(n_) {
    if (m < 1 || n < m) {
      throw std::invalid_argument("SystemDims: require 1 <= m <= n, got m=" +
                                  std::to_string(m) + " n=" + std::to_string(n));
    }
  }

  long long mn() const { return static_cast<long long>(m) * n; }

  friend bool operator==(const SystemDims&, const SystemDims&) = default;
};

/// Mean, second moment and variance of the entanglement entropy for one choice
/// of dimensions. variance == second_moment - mean^2 by construction.
struct EntropyStats {
  SystemDims dims;
  double mean;
  double second_moment;
  double variance;
};

}  // namespace pagevar
