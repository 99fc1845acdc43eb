#pragma once

#include <utility>

#include "gensamp/bases.hpp"
#include "gensamp/sections.hpp"

namespace gensamp {

// All computable stability quantities for a block shape (n, m):
//   inv_norm  = ||(P_n U* P_m U P_n)^{-1}||
//   k_lower   = K_{n,m,M}, the lower approximation of K_{n,m} at M = M_used
//   k_upper   = ||U|| * K~_{n,m}, the upper approximation
//   residual  = ||P_n U* P_m U P_n - P_n U* U P_n||
struct ConstantsReport {
  int n = 0;
  int m = 0;
  double inv_norm = 0.0;
  double k_lower = 0.0;
  double k_upper = 0.0;
  double residual = 0.0;
  int M_used = 0;
  bool k_lower_converged = true;
};

// Parameters of a threshold question "how large must m be": the smallest m
// with K_{n,m} <= theta (Phi) or with the Gram residual below eps^{-1} f(theta)
// (Psi~).
struct ThresholdQuery {
  int n = 1;
  double theta = 1.0;
};

// f(theta) = (sqrt(1 + 4 theta^2) - 1)^2 / (4 theta^2).
double theta_f(double theta);

// 1/sigma_min(G(n,m)) with G = (P_m U P_n)*(P_m U P_n).  Returns +infinity
// (setting *singular if given) when the Gram matrix is numerically singular.
double gram_inverse_norm(const BasisFamily& family, const SamplingScheme& scheme,
                         int n, int m, bool* singular = nullptr);

// K_{n,m,M} = ||(P_n U* P_m U P_n)^{-1} P_n U* P_m U P_n^perp P_M||, the
// finite-rank lower approximation of K_{n,m}; nondecreasing in M.  M >= n.
double k_lower(const BasisFamily& family, const SamplingScheme& scheme, int n, int m, int M);

// ||U|| * K~_{n,m} with ||U|| = sqrt(eps^{-1} B) and
// K~ = ||(P_n U* P_m U P_n)^{-1} P_n U* P_m|| = sqrt(1/lambda_min(G)).
double k_upper(const BasisFamily& family, const SamplingScheme& scheme, int n, int m);

// ||P_n U* P_m U P_n - P_n U* U P_n|| for orthonormal families, where the
// infinite-m limit is eps^{-1} I_n: the largest eigenvalue of eps^{-1} I - G.
// Throws std::domain_error for non-orthonormal families.
double residual_norm(const BasisFamily& family, const SamplingScheme& scheme, int n, int m);

// Psi~(U, n, theta): smallest m >= n with residual_norm(n, m) <= eps^{-1} f(theta).
// Search by doubling then bisection (the residual is nonincreasing in m).
int psi_tilde(const BasisFamily& family, const SamplingScheme& scheme, const ThresholdQuery& query);

// A bracket for Phi(U, n, theta) = min{m : K_{n,m} <= theta}, which is not
// exactly computable: lower uses k_lower with the M* = 8n tail cap, upper uses
// k_upper; lower <= Phi <= upper.
std::pair<int, int> phi_bracket(const BasisFamily& family, const SamplingScheme& scheme,
                                const ThresholdQuery& query);

// The closed-form wavelet bound on Phi(U, n, theta):
//   (4 eps^{1-2p} ceil(a) C^2 / f(theta))^{1/(2p-1)} *
//   (1 + (4^p n^{2p} - 1)/(4^p - 1))^{1/(2p-1)}.
double wavelet_phi_bound(const ThresholdQuery& query, double epsilon, double C, int p, double a);

// The analytic tail bound on the residual for a wavelet family with decay
// (C, p) and width a:  (4 eps^{-2p} ceil(a) C^2 / m^{2p-1}) *
// (1 + (4^p n^{2p} - 1)/(4^p - 1)).
double wavelet_residual_bound(int n, int m, double epsilon, double C, int p, double a);

// Convenience aggregation of all quantities above for one (n, m), with the
// k_lower tail capped at M (default 8n); k_lower_converged reports whether the
// last doubling of M changed K_{n,m,M} by less than 1%.
ConstantsReport make_constants_report(const BasisFamily& family, const SamplingScheme& scheme,
                                      int n, int m, int M = 0);

}  // namespace gensamp
