#include "gensamp/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace gensamp {

namespace {

// Direct singular values of M.  Jacobi resolves tiny singular values far
// below sqrt(machine eps) * sigma_max, which the instability figures need;
// for larger blocks (where only well-conditioned spectra occur) the
// divide-and-conquer SVD is used to keep the cost reasonable.
Eigen::VectorXd singular_values(const ComplexMatrix& M) {
  const Eigen::Index small_side = std::min(M.rows(), M.cols());
  if (small_side <= 300) {
    return Eigen::JacobiSVD<ComplexMatrix>(M).singularValues();
  }
  return Eigen::BDCSVD<ComplexMatrix>(M).singularValues();
}

}  // namespace

RealVector hermitian_eigenvalues(const ComplexMatrix& M) {
  if (M.rows() != M.cols()) {
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  }
  const double deviation = (M - M.adjoint()).cwiseAbs().maxCoeff();
  if (deviation > 1e-12) {
    throw std::domain_error("hermitian_eigenvalues: matrix is not Hermitian (max |M - M*| = " +
                            std::to_string(deviation) + ")");
  }
  ComplexMatrix H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(H, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

double operator_norm(const ComplexMatrix& M) {
  if (M.size() == 0) {
    return 0.0;
  }
  // sqrt of the largest eigenvalue of the Gram matrix, taken on the smaller
  // side (the nonzero spectra of M*M and MM* coincide).
  ComplexMatrix gram;
  if (M.rows() <= M.cols()) {
    gram.noalias() = M * M.adjoint();
  } else {
    gram.noalias() = M.adjoint() * M;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double min_singular_value(const ComplexMatrix& M) {
  if (M.size() == 0) {
    return 0.0;
  }
  const Eigen::VectorXd sv = singular_values(M);
  return sv(sv.size() - 1);
}

ComplexVector least_squares_solve(const ComplexMatrix& M, const ComplexVector& b) {
  if (M.rows() != b.size()) {
    throw std::invalid_argument("least_squares_solve: dimension mismatch");
  }
  if (M.rows() < M.cols()) {
    throw std::invalid_argument("least_squares_solve: system must have m >= n");
  }
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(M);
  // Cheap rank screen from the pivoted R diagonal; only if it looks deficient
  // is the precise (and costly) SVD consulted, so well-conditioned solves pay
  // nothing and the error report carries true singular values.
  const Eigen::VectorXd r_diag = qr.matrixR().diagonal().cwiseAbs();
  const double r_max = r_diag.maxCoeff();
  const double r_min = r_diag.minCoeff();
  if (r_max == 0.0 || r_min <= 1e-12 * r_max) {
    const Eigen::VectorXd sv = singular_values(M);
    const double sigma_max = sv(0);
    const double sigma_min = sv(sv.size() - 1);
    if (sigma_max == 0.0 || sigma_min <= 1e-13 * sigma_max) {
      throw SingularSystemError("least_squares_solve: rank-deficient system", sigma_min,
                                sigma_max);
    }
  }
  return qr.solve(b);
}

}  // namespace gensamp
