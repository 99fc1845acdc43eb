#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace gensamp {

// Dense double-precision complex containers shared by every module.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Thrown when a linear system is (numerically) rank deficient.  Carries the
// extreme singular values so callers can report how singular the system was.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& message, double sigma_min, double sigma_max)
      : std::runtime_error(message + " (sigma_min=" + std::to_string(sigma_min) +
                           ", sigma_max=" + std::to_string(sigma_max) + ")"),
        sigma_min_(sigma_min),
        sigma_max_(sigma_max) {}

  double sigma_min() const { return sigma_min_; }
  double sigma_max() const { return sigma_max_; }

 private:
  double sigma_min_;
  double sigma_max_;
};

// Eigenvalues of the Hermitian part (M + M*)/2, sorted descending.
// M must be square and Hermitian to within 1e-12 componentwise.
RealVector hermitian_eigenvalues(const ComplexMatrix& M);

// Largest singular value (spectral norm), computed from the Hermitian Gram
// matrix on the smaller side of M.
double operator_norm(const ComplexMatrix& M);

// Smallest singular value.  Computed by a direct SVD of M itself: forming the
// Gram matrix would floor sigma_min at about sqrt(machine_eps)*sigma_max,
// which is far too coarse for the near-singular square sections the
// instability experiments probe.
double min_singular_value(const ComplexMatrix& M);

// x minimizing ||Mx - b||_2 via column-pivoted QR (backward stable; solves the
// normal equations M*M x = M*b without ever forming them).  Throws
// SingularSystemError if sigma_min <= 1e-13 * sigma_max.
ComplexVector least_squares_solve(const ComplexMatrix& M, const ComplexVector& b);

}  // namespace gensamp
