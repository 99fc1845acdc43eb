#pragma once

#include "gensamp/bases.hpp"
#include "gensamp/numerics.hpp"

namespace gensamp {

// Fourier sample spacing eps together with the support radius T of the
// reconstruction family it samples.  Construction enforces the Nyquist
// condition eps <= 1/(2T); outside it the sampling exponentials no longer span
// the reconstruction functions and none of the stated bounds apply, so this is
// a hard error, not a warning.
struct SamplingScheme {
  double epsilon = 0.5;
  double T = 0.5;

  SamplingScheme(double eps, const BasisFamily& family);
  SamplingScheme(double eps, double support_radius);
};

// The index bijection N -> eps Z: rho(1) = 0, rho(2) = eps, rho(3) = -eps,
// rho(4) = 2 eps, ...  rho_int is the integer part (without the eps factor);
// FourierExp basis indices use the same bijection.
long rho_int(long i);
double rho(long i, double epsilon);

// A dense m x n block of the cross-Gramian U, u_ij = (F phi_j)(rho(i)), with
// rows i = 1..m and columns j = col_offset+1 .. col_offset+n.
struct SectionMatrix {
  ComplexMatrix block;
  SamplingScheme scheme;
  BasisFamily family;
  int col_offset = 0;
};

SectionMatrix build_section(const BasisFamily& family, const SamplingScheme& scheme,
                            int m, int n, int col_offset = 0);

// The square finite-section operator S_m* W_m = P_m U P_m.
SectionMatrix build_square_section(const BasisFamily& family, const SamplingScheme& scheme, int m);

// Entry cache shared by parameter sweeps (psi_tilde and the figure experiments
// re-request the same rows for many different block shapes).  Keyed by
// (family kind, sample spacing, row index), each slot holding a prefix of that
// row's entries; safe for concurrent reads with exclusive writes.  clear()
// exists for tests that measure cold assembly.
void clear_section_cache();

}  // namespace gensamp
