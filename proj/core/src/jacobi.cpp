#include "pagevar/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pagevar/errors.hpp"

namespace pagevar {
namespace {

using cd = std::complex<double>;

double off_diagonal_norm(const std::vector<cd>& a, int m) {
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) acc += std::norm(a[i * m + j]);
  }
  return std::sqrt(2.0 * acc);
}

// One two-sided rotation G(p,q)^H A G(p,q) that zeroes a_pq. The rotation
// carries the phase of a_pq so the 2x2 pivot problem reduces to the real
// symmetric case.
void rotate(std::vector<cd>& a, int m, int p, int q) {
  const cd g = a[p * m + q];
  const double absg = std::abs(g);
  if (absg == 0.0) return;
  const double alpha = a[p * m + p].real();
  const double beta = a[q * m + q].real();
  const cd phase = g / absg;
  const double tau = (alpha - beta) / (2.0 * absg);
  const double t =
      (tau >= 0.0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cd ph_s = s * phase;
  const cd phc_s = s * std::conj(phase);

  for (int j = 0; j < m; ++j) {
    const cd up = a[j * m + p];
    const cd vq = a[j * m + q];
    a[j * m + p] = c * up - phc_s * vq;
    a[j * m + q] = ph_s * up + c * vq;
  }
  for (int j = 0; j < m; ++j) {
    const cd rp = a[p * m + j];
    const cd rq = a[q * m + j];
    a[p * m + j] = c * rp - ph_s * rq;
    a[q * m + j] = phc_s * rp + c * rq;
  }
  a[p * m + q] = 0.0;
  a[q * m + p] = 0.0;
  a[p * m + p] = cd(a[p * m + p].real(), 0.0);
  a[q * m + q] = cd(a[q * m + q].real(), 0.0);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(std::vector<cd> a, int size) {
  const int m = size;
  if (m < 1 || a.size() != static_cast<size_t>(m) * m) {
    throw std::invalid_argument("hermitian_eigenvalues: bad size");
  }

  double scale = 0.0;
  for (const cd& z : a) scale = std::max(scale, std::abs(z));
  const double sym_tol = 1e-12 * std::max(1.0, scale);
  for (int i = 0; i < m; ++i) {
    if (std::abs(a[i * m + i].imag()) > sym_tol) {
      throw std::invalid_argument("hermitian_eigenvalues: diagonal not real");
    }
    a[i * m + i] = cd(a[i * m + i].real(), 0.0);
    for (int j = i + 1; j < m; ++j) {
      if (std::abs(a[i * m + j] - std::conj(a[j * m + i])) > sym_tol) {
        throw std::invalid_argument("hermitian_eigenvalues: not Hermitian");
      }
    }
  }

  double frob = 0.0;
  for (const cd& z : a) frob += std::norm(z);
  frob = std::sqrt(frob);
  const double target = 1e-13 * frob;

  bool converged = frob == 0.0;
  for (int sweep = 0; !converged && sweep < 50; ++sweep) {
    if (off_diagonal_norm(a, m) <= target) {
      converged = true;
      break;
    }
    for (int p = 0; p < m - 1; ++p) {
      for (int q = p + 1; q < m; ++q) rotate(a, m, p, q);
    }
  }
  if (!converged && off_diagonal_norm(a, m) > target) {
    throw convergence_error("hermitian_eigenvalues: no convergence in 50 sweeps");
  }

  std::vector<double> eig(m);
  for (int i = 0; i < m; ++i) eig[i] = a[i * m + i].real();
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace pagevar
