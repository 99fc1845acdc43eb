#include "gensamp/solver.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace gensamp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::complex<double> kI{0.0, 1.0};

double sinc(double u) {
  // Exact at integers, so that the sinc series vanishes identically at
  // integer points outside the sample range.
  const double r = std::nearbyint(u);
  if (u == r) {
    return r == 0.0 ? 1.0 : 0.0;
  }
  if (std::abs(u) < 1e-8) {
    return 1.0 - kPi * kPi * u * u / 6.0;
  }
  return std::sin(kPi * u) / (kPi * u);
}

// E(u) = integral_a^b e^{-2 pi i u t} dt, the transform of chi_[a,b].
std::complex<double> interval_exp(double u, double a, double b) {
  if (std::abs(u) < 1e-10) {
    // Two-term series of (e^{-2 pi i u a} - e^{-2 pi i u b}) / (2 pi i u).
    const double mid = 0.5 * (a + b);
    return (b - a) * std::exp(-2.0 * kPi * kI * (u * mid));
  }
  const std::complex<double> den = 2.0 * kPi * kI * u;
  return (std::exp(-2.0 * kPi * kI * (u * a)) - std::exp(-2.0 * kPi * kI * (u * b))) / den;
}

std::complex<double> runge_fourier(double omega) {
  const int pieces = std::max(2, static_cast<int>(std::ceil(std::abs(omega) / 2.0)) + 2);
  return composite_gauss_legendre(
      [omega](double x) {
        return std::exp(-2.0 * kPi * kI * (omega * x)) / (1.0 + 16.0 * x * x);
      },
      -1.0, 1.0, pieces);
}

void check_solvable(const SectionMatrix& section, const SampleVector& samples) {
  if (section.col_offset != 0) {
    throw std::invalid_argument("solver: section must start at column 1 (col_offset 0)");
  }
  if (samples.values.size() != section.block.rows()) {
    throw std::invalid_argument("solver: sample count does not match section rows");
  }
  if (samples.scheme.epsilon != section.scheme.epsilon) {
    throw std::invalid_argument("solver: samples and section use different spacings");
  }
}

// One Legendre recurrence per point, accumulating sum_j c_j L~_j(x).
std::complex<double> legendre_expansion_point(const ComplexVector& coeffs, double x) {
  if (coeffs.size() == 0 || x < -1.0 || x > 1.0) {
    return 0.0;
  }
  std::complex<double> acc = coeffs(0) * std::sqrt(0.5);
  double p0 = 1.0;
  double p1 = x;
  for (int j = 1; j < coeffs.size(); ++j) {
    acc += coeffs(j) * std::sqrt((2.0 * j + 1.0) / 2.0) * p1;
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return acc;
}

std::complex<double> expansion_fourier(const BasisFamily& family, const ComplexVector& coeffs,
                                       double omega) {
  if (coeffs.size() == 0) {
    return 0.0;
  }
  if (family.kind == BasisKind::Legendre) {
    const auto row = detail::legendre_fourier_row(static_cast<int>(coeffs.size()) - 1, omega);
    std::complex<double> acc = 0.0;
    for (int l = 0; l < coeffs.size(); ++l) {
      acc += coeffs(l) * row[l];
    }
    return acc;
  }
  std::complex<double> acc = 0.0;
  for (int l = 0; l < coeffs.size(); ++l) {
    acc += coeffs(l) * eval_fourier(family, l + 1, omega);
  }
  return acc;
}

}  // namespace

ReconstructionResult solve_uneven(const SectionMatrix& section, const SampleVector& samples) {
  check_solvable(section, samples);
  const ComplexMatrix& B = section.block;
  if (B.rows() < B.cols()) {
    throw std::invalid_argument("solve_uneven: needs at least as many samples as coefficients");
  }
  ComplexVector beta = least_squares_solve(B, samples.values);
  ComplexMatrix gram(B.cols(), B.cols());
  gram.noalias() = B.adjoint() * B;
  const RealVector eigs = hermitian_eigenvalues(gram);
  const double lambda_min = eigs(eigs.size() - 1);
  const double inv_norm =
      lambda_min > 0.0 ? 1.0 / lambda_min : std::numeric_limits<double>::infinity();
  return ReconstructionResult{std::move(beta), section.family, inv_norm,
                              static_cast<int>(B.rows()), static_cast<int>(B.cols())};
}

ReconstructionResult solve_consistent(const SectionMatrix& square, const SampleVector& samples) {
  check_solvable(square, samples);
  const ComplexMatrix& S = square.block;
  if (S.rows() != S.cols()) {
    throw std::invalid_argument("solve_consistent: section must be square");
  }
  // Rank-revealing QR keeps the solve finite even deep in the unstable regime;
  // the instability itself is reported through inv_norm, not an exception.
  ComplexVector beta = Eigen::ColPivHouseholderQR<ComplexMatrix>(S).solve(samples.values);
  const double sigma_min = min_singular_value(S);
  const double inv_norm =
      sigma_min > 0.0 ? 1.0 / sigma_min : std::numeric_limits<double>::infinity();
  return ReconstructionResult{std::move(beta), square.family, inv_norm,
                              static_cast<int>(S.rows()), static_cast<int>(S.cols())};
}

std::complex<double> eval_gspec_fourier(const GSpec& g, double omega, bool allow_oracle) {
  std::complex<double> acc = expansion_fourier(g.family, g.coefficients, omega);
  switch (g.extra) {
    case GSpec::Extra::None:
      break;
    case GSpec::Extra::CosBump:
      // cos(2 pi t) chi_[1/2,1]:  (E(w-1) + E(w+1)) / 2
      acc += 0.5 * (interval_exp(omega - 1.0, 0.5, 1.0) + interval_exp(omega + 1.0, 0.5, 1.0));
      break;
    case GSpec::Extra::SinBump:
      // sin(2 pi t) chi_[0.3,0.6]:  (E(w-1) - E(w+1)) / (2i)
      acc += (interval_exp(omega - 1.0, 0.3, 0.6) - interval_exp(omega + 1.0, 0.3, 0.6)) /
             (2.0 * kI);
      break;
    case GSpec::Extra::Runge:
      if (!allow_oracle) {
        throw std::invalid_argument(
            "eval_gspec_fourier: Runge term has no closed form (oracle disallowed)");
      }
      acc += runge_fourier(omega);
      break;
  }
  return acc;
}

std::complex<double> eval_gspec_point(const GSpec& g, double x) {
  std::complex<double> acc = 0.0;
  if (g.family.kind == BasisKind::Legendre) {
    acc = legendre_expansion_point(g.coefficients, x);
  } else {
    for (int l = 0; l < g.coefficients.size(); ++l) {
      acc += g.coefficients(l) * eval_point(g.family, l + 1, x);
    }
  }
  switch (g.extra) {
    case GSpec::Extra::None:
      break;
    case GSpec::Extra::CosBump:
      if (x >= 0.5 && x <= 1.0) {
        acc += std::cos(2.0 * kPi * x);
      }
      break;
    case GSpec::Extra::SinBump:
      if (x >= 0.3 && x <= 0.6) {
        acc += std::sin(2.0 * kPi * x);
      }
      break;
    case GSpec::Extra::Runge:
      if (x >= -1.0 && x <= 1.0) {
        acc += 1.0 / (1.0 + 16.0 * x * x);
      }
      break;
  }
  return acc;
}

SampleVector synthesize_samples(const GSpec& g, const SamplingScheme& scheme, int m,
                                bool allow_oracle) {
  if (m < 1) {
    throw std::invalid_argument("synthesize_samples: m must be >= 1");
  }
  ComplexVector values(m);
  for (int i = 1; i <= m; ++i) {
    values(i - 1) = eval_gspec_fourier(g, rho(i, scheme.epsilon), allow_oracle);
  }
  return SampleVector{std::move(values), scheme};
}

std::vector<std::complex<double>> eval_reconstruction(const ReconstructionResult& result,
                                                      const std::vector<double>& grid,
                                                      bool transform_domain) {
  std::vector<std::complex<double>> out(grid.size());
  const ComplexVector& c = result.coefficients;
  if (transform_domain) {
    for (std::size_t q = 0; q < grid.size(); ++q) {
      out[q] = expansion_fourier(result.family, c, grid[q]);
    }
    return out;
  }
  if (result.family.kind == BasisKind::Legendre) {
    for (std::size_t q = 0; q < grid.size(); ++q) {
      out[q] = legendre_expansion_point(c, grid[q]);
    }
    return out;
  }
  for (std::size_t q = 0; q < grid.size(); ++q) {
    std::complex<double> acc = 0.0;
    for (int l = 0; l < c.size(); ++l) {
      acc += c(l) * eval_point(result.family, l + 1, grid[q]);
    }
    out[q] = acc;
  }
  return out;
}

std::vector<std::complex<double>> baseline_truncated_fourier(const SampleVector& samples,
                                                             const std::vector<double>& grid) {
  const int m = static_cast<int>(samples.values.size());
  if (m % 2 == 0) {
    throw std::invalid_argument(
        "baseline_truncated_fourier: needs an odd sample count (symmetric frequencies)");
  }
  const double eps = samples.scheme.epsilon;
  std::vector<std::complex<double>> out(grid.size());
  for (std::size_t q = 0; q < grid.size(); ++q) {
    std::complex<double> acc = 0.0;
    for (int i = 1; i <= m; ++i) {
      acc += samples.values(i - 1) * std::exp(2.0 * kPi * kI * (rho(i, eps) * grid[q]));
    }
    out[q] = eps * acc;
  }
  return out;
}

std::vector<std::complex<double>> baseline_sinc(const SampleVector& samples,
                                                const std::vector<double>& grid) {
  const int m = static_cast<int>(samples.values.size());
  const double eps = samples.scheme.epsilon;
  std::vector<std::complex<double>> out(grid.size());
  for (std::size_t q = 0; q < grid.size(); ++q) {
    std::complex<double> acc = 0.0;
    for (int i = 1; i <= m; ++i) {
      acc += samples.values(i - 1) * sinc(grid[q] / eps - static_cast<double>(rho_int(i)));
    }
    out[q] = acc;
  }
  return out;
}

ErrorMetrics error_metrics(const std::vector<std::complex<double>>& approx,
                           const std::vector<std::complex<double>>& reference,
                           const std::vector<double>& grid_weights) {
  if (approx.size() != reference.size() || approx.size() != grid_weights.size()) {
    throw std::invalid_argument("error_metrics: size mismatch");
  }
  ErrorMetrics metrics;
  double sum = 0.0;
  for (std::size_t q = 0; q < approx.size(); ++q) {
    const double d = std::abs(approx[q] - reference[q]);
    sum += grid_weights[q] * d * d;
    metrics.linf = std::max(metrics.linf, d);
  }
  metrics.l2 = std::sqrt(sum);
  return metrics;
}

}  // namespace gensamp
