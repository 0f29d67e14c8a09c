#pragma once

#include <stdexcept>

namespace pagevar {

/// A gamma-family function was evaluated at (or within tolerance of) a
/// non-positive integer where it has no finite value.
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An iterative scheme (extrapolation table, adaptive quadrature, eigenvalue
/// sweeps) exhausted its budget before meeting the requested tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pagevar
