#pragma once

#include <cstdint>
#include <vector>

#include "gensamp/bases.hpp"
#include "gensamp/sections.hpp"

namespace gensamp {

// Samples eta_f in rho order: values[i-1] = (F f)(rho(i)).
struct SampleVector {
  ComplexVector values;
  SamplingScheme scheme;
};

// Outcome of a reconstruction solve: the coefficients beta~ together with the
// inverse norm ||A^{-1}|| of the solved system (A = P_n U* P_m U P_n for the
// uneven solve, A = P_m U P_m for the consistent one).
struct ReconstructionResult {
  ComplexVector coefficients;
  BasisFamily family;
  double inv_norm = 0.0;
  int m_used = 0;
  int n_used = 0;
};

// Generalized (uneven-section) reconstruction: beta~ solves
// P_n U* P_m U P_n beta~ = P_n U* P_m eta_f.  Implemented as backward-stable
// least squares on the m x n block, which has the same solution; inv_norm is
// reported from the Gram spectrum, 1/lambda_min((P_m U P_n)*(P_m U P_n)).
ReconstructionResult solve_uneven(const SectionMatrix& section, const SampleVector& samples);

// Consistent (square-section) reconstruction beta~ = (P_m U P_m)^{-1} eta_f.
// May be arbitrarily ill-conditioned; inv_norm = 1/sigma_min(P_m U P_m).
ReconstructionResult solve_consistent(const SectionMatrix& square, const SampleVector& samples);

// A synthesizable signal: a finite expansion in `family` plus an optional
// closed-form extra term from the catalog.
struct GSpec {
  enum class Extra { None, CosBump, SinBump, Runge };

  BasisFamily family;
  ComplexVector coefficients;  // may have length 0
  Extra extra = Extra::None;
};

// (F g)(omega): closed forms for the expansion part and the bumps; the Runge
// term falls back to the quadrature oracle (absolute error <= 1e-12).  Throws
// std::invalid_argument for Runge when allow_oracle is false.
std::complex<double> eval_gspec_fourier(const GSpec& g, double omega, bool allow_oracle = true);

// g(x) in the reconstruction domain (expansion part via eval_point).
std::complex<double> eval_gspec_point(const GSpec& g, double x);

// Samples f(rho(i)) = (F g)(rho(i)), i = 1..m.
SampleVector synthesize_samples(const GSpec& g, const SamplingScheme& scheme, int m,
                                bool allow_oracle = true);

// Pointwise values of the reconstruction on a grid: g~ = sum beta~_l phi_l
// when transform_domain is false, f~ = sum beta~_l (F phi_l) when true.
std::vector<std::complex<double>> eval_reconstruction(const ReconstructionResult& result,
                                                      const std::vector<double>& grid,
                                                      bool transform_domain = false);

// Classical baselines built from the same samples.
// g_N = eps * sum_i values_i e^{2 pi i rho(i) t}   (truncated NS sampling sum; m odd)
std::vector<std::complex<double>> baseline_truncated_fourier(const SampleVector& samples,
                                                             const std::vector<double>& grid);
// f_N(t) = sum_i values_i sinc(t/eps - rho_int(i)), sinc(x) = sin(pi x)/(pi x)
std::vector<std::complex<double>> baseline_sinc(const SampleVector& samples,
                                                const std::vector<double>& grid);

struct ErrorMetrics {
  double l2 = 0.0;
  double linf = 0.0;
};

// Weighted discrete L^2 and max norm of approx - reference.
ErrorMetrics error_metrics(const std::vector<std::complex<double>>& approx,
                           const std::vector<std::complex<double>>& reference,
                           const std::vector<double>& grid_weights);

// The linear congruential generator that makes the paper's "arbitrarily chosen
// real coefficients in [0,10]" reproducible: state' = state * 6364136223846793005
// + 1442695040888963407 (mod 2^64), value = top 53 bits mapped to [0,10).
class CoefficientLcg {
 public:
  explicit CoefficientLcg(std::uint64_t seed = 42) : state_(seed) {}

  double next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(state_ >> 11) * (10.0 / 9007199254740992.0);
  }

 private:
  std::uint64_t state_;
};

}  // namespace gensamp
