#pragma once

#include <complex>
#include <vector>

namespace pagevar {

/// Eigenvalues, ascending, of an m x m complex Hermitian matrix given
/// row-major. Cyclic complex Jacobi rotations; converged once the
/// off-diagonal Frobenius norm drops below 1e-13 * ||A||_F, with a budget of
/// 50 sweeps (convergence_error beyond that). Rejects input that is not
/// Hermitian within 1e-12 relative to its largest entry.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a,
                                          int size);

}  // namespace pagevar
