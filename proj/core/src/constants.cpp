#include "gensamp/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace gensamp {

namespace {

void check_shape(int n, int m) {
  if (n < 1) {
    throw std::invalid_argument("constants: n must be >= 1");
  }
  if (m < n) {
    throw std::invalid_argument("constants: m must be >= n (uneven section)");
  }
}

double gram_lambda_min(const BasisFamily& family, const SamplingScheme& scheme, int n, int m) {
  const SectionMatrix section = build_section(family, scheme, m, n);
  ComplexMatrix gram(n, n);
  gram.noalias() = section.block.adjoint() * section.block;
  const RealVector eigs = hermitian_eigenvalues(gram);
  return eigs(eigs.size() - 1);
}

}  // namespace

double theta_f(double theta) {
  if (!(theta > 0.0)) {
    throw std::invalid_argument("theta_f: theta must be positive");
  }
  const double s = std::sqrt(1.0 + 4.0 * theta * theta) - 1.0;
  return s * s / (4.0 * theta * theta);
}

double gram_inverse_norm(const BasisFamily& family, const SamplingScheme& scheme,
                         int n, int m, bool* singular) {
  check_shape(n, m);
  const double lambda_min = gram_lambda_min(family, scheme, n, m);
  if (!(lambda_min > 0.0)) {
    if (singular != nullptr) {
      *singular = true;
    }
    return std::numeric_limits<double>::infinity();
  }
  if (singular != nullptr) {
    *singular = false;
  }
  return 1.0 / lambda_min;
}

double k_lower(const BasisFamily& family, const SamplingScheme& scheme, int n, int m, int M) {
  check_shape(n, m);
  if (M < n) {
    throw std::invalid_argument("k_lower: M must be >= n");
  }
  if (M == n) {
    return 0.0;
  }
  const SectionMatrix head = build_section(family, scheme, m, n);
  const SectionMatrix tail = build_section(family, scheme, m, M - n, n);
  ComplexMatrix gram(n, n);
  gram.noalias() = head.block.adjoint() * head.block;
  ComplexMatrix cross(n, M - n);
  cross.noalias() = head.block.adjoint() * tail.block;
  Eigen::LDLT<ComplexMatrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw SingularSystemError("k_lower: Gram matrix is numerically singular", 0.0,
                              operator_norm(gram));
  }
  const ComplexMatrix solved = ldlt.solve(cross);
  return operator_norm(solved);
}

double k_upper(const BasisFamily& family, const SamplingScheme& scheme, int n, int m) {
  const double inv = gram_inverse_norm(family, scheme, n, m);
  const double u_norm = std::sqrt(family.riesz_upper / scheme.epsilon);
  return u_norm * std::sqrt(inv);
}

double residual_norm(const BasisFamily& family, const SamplingScheme& scheme, int n, int m) {
  check_shape(n, m);
  if (!family.orthonormal()) {
    throw std::domain_error(
        "residual_norm: closed form for the infinite section needs an orthonormal family");
  }
  const double lambda_min = gram_lambda_min(family, scheme, n, m);
  return std::max(0.0, 1.0 / scheme.epsilon - lambda_min);
}

int psi_tilde(const BasisFamily& family, const SamplingScheme& scheme,
              const ThresholdQuery& query) {
  if (query.n < 1) {
    throw std::invalid_argument("psi_tilde: n must be >= 1");
  }
  const double target = theta_f(query.theta) / scheme.epsilon;
  const int n = query.n;
  if (residual_norm(family, scheme, n, n) <= target) {
    return n;
  }
  // residual_norm is nonincreasing in m (the Gram grows in the PSD order), so
  // double until the target is met, then bisect.
  int lo = n;  // residual(lo) > target
  int hi = 2 * n;
  constexpr int kHardCap = 1 << 24;
  while (residual_norm(family, scheme, n, hi) > target) {
    lo = hi;
    hi *= 2;
    if (hi > kHardCap) {
      throw std::runtime_error("psi_tilde: no admissible m below the search cap");
    }
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (residual_norm(family, scheme, n, mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::pair<int, int> phi_bracket(const BasisFamily& family, const SamplingScheme& scheme,
                                const ThresholdQuery& query) {
  if (query.n < 1) {
    throw std::invalid_argument("phi_bracket: n must be >= 1");
  }
  const double floor_ratio = std::sqrt(family.riesz_upper / family.riesz_lower);
  if (query.theta <= floor_ratio) {
    throw std::domain_error(
        "phi_bracket: k_upper tends to sqrt(B/A) from above, so the upper end of the "
        "bracket needs theta > sqrt(B/A)");
  }
  const int n = query.n;
  const int cap = 64 * n;
  const int M_star = 8 * n;
  int lower = 0;
  for (int m = n; m <= cap; ++m) {
    if (k_lower(family, scheme, n, m, M_star) <= query.theta) {
      lower = m;
      break;
    }
  }
  if (lower == 0) {
    throw std::runtime_error("phi_bracket: lower scan exceeded the 64 n cap");
  }
  int upper = 0;
  for (int m = lower; m <= cap; ++m) {
    if (k_upper(family, scheme, n, m) <= query.theta) {
      upper = m;
      break;
    }
  }
  if (upper == 0) {
    throw std::runtime_error("phi_bracket: upper scan exceeded the 64 n cap");
  }
  return {lower, upper};
}

double wavelet_phi_bound(const ThresholdQuery& query, double epsilon, double C, int p, double a) {
  if (query.n < 1 || !(query.theta > 0.0) || !(epsilon > 0.0) || !(C > 0.0) || p < 1 ||
      !(a > 0.0)) {
    throw std::invalid_argument("wavelet_phi_bound: invalid parameters");
  }
  const double inv_exp = 1.0 / (2.0 * p - 1.0);
  const double four_p = std::pow(4.0, p);
  const double lead =
      4.0 * std::pow(epsilon, 1.0 - 2.0 * p) * std::ceil(a) * C * C / theta_f(query.theta);
  const double tail =
      1.0 + (four_p * std::pow(static_cast<double>(query.n), 2.0 * p) - 1.0) / (four_p - 1.0);
  return std::pow(lead, inv_exp) * std::pow(tail, inv_exp);
}

double wavelet_residual_bound(int n, int m, double epsilon, double C, int p, double a) {
  if (n < 1 || m < 1 || !(epsilon > 0.0) || !(C > 0.0) || p < 1 || !(a > 0.0)) {
    throw std::invalid_argument("wavelet_residual_bound: invalid parameters");
  }
  const double four_p = std::pow(4.0, p);
  const double lead = 4.0 * std::pow(epsilon, -2.0 * p) * std::ceil(a) * C * C /
                      std::pow(static_cast<double>(m), 2.0 * p - 1.0);
  const double tail =
      1.0 + (four_p * std::pow(static_cast<double>(n), 2.0 * p) - 1.0) / (four_p - 1.0);
  return lead * tail;
}

ConstantsReport make_constants_report(const BasisFamily& family, const SamplingScheme& scheme,
                                      int n, int m, int M) {
  check_shape(n, m);
  if (M == 0) {
    M = 8 * n;
  }
  if (M < n) {
    throw std::invalid_argument("make_constants_report: M must be >= n (or 0 for the default)");
  }
  ConstantsReport report;
  report.n = n;
  report.m = m;
  report.M_used = M;
  report.inv_norm = gram_inverse_norm(family, scheme, n, m);
  report.k_upper = k_upper(family, scheme, n, m);
  report.residual = family.orthonormal()
                        ? residual_norm(family, scheme, n, m)
                        : std::numeric_limits<double>::quiet_NaN();
  report.k_lower = k_lower(family, scheme, n, m, M);
  const int half = std::max(n, M / 2);
  const double k_half = k_lower(family, scheme, n, m, half);
  report.k_lower_converged =
      report.k_lower == 0.0 || std::abs(report.k_lower - k_half) < 0.01 * report.k_lower;
  return report;
}

}  // namespace gensamp
