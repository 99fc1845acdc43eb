#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "gensamp/numerics.hpp"

namespace gensamp {

enum class BasisKind { HaarSystem, Legendre, FourierExp };

// A reconstruction basis family.  All functions of a family are supported in a
// common hull [support_lo, support_hi]; support_radius() is the half-width T
// of that hull, which is what the Nyquist condition eps <= 1/(2T) constrains
// (the sampling exponentials with spacing eps span every function supported on
// an interval of length 1/eps, wherever that interval sits).
struct BasisFamily {
  BasisKind kind = BasisKind::HaarSystem;
  double support_lo = 0.0;
  double support_hi = 1.0;
  double riesz_lower = 1.0;   // A of the Riesz bounds
  double riesz_upper = 1.0;   // B of the Riesz bounds
  double decay_C = 2.0;       // |F phi(w)| <= C / |w|^p
  int decay_p = 1;
  double wavelet_width = 1.0;  // a (HaarSystem only; only a = 1 is implemented)
  double fourier_eps = 0.0;    // exponential spacing (FourierExp only)

  double support_radius() const { return 0.5 * (support_hi - support_lo); }
  bool orthonormal() const { return riesz_lower == 1.0 && riesz_upper == 1.0; }

  // Haar system on [0,1]: phi, psi_{0,0}, psi_{1,0}, psi_{1,1}, psi_{2,0}, ...
  static BasisFamily haar();
  // Legendre polynomials on [-1,1], normalized to unit L^2 norm.
  static BasisFamily legendre();
  // eps-spaced complex exponentials on [-1/(2 eps), 1/(2 eps)].
  static BasisFamily fourier_exp(double eps);
};

// Decoded form of a linear Haar index (1-based): l = 1 is the scaling function
// phi; l >= 2 is the wavelet psi_{j,k} with j = floor(log2(l-1)) and
// k = l - 1 - 2^j, i.e. level j occupies indices 2^j + 1 .. 2^{j+1}.
struct HaarIndex {
  bool is_scaling = false;
  int level = 0;
  int shift = 0;
};
HaarIndex decode_haar_index(int l);

// Pointwise value of the l-th basis function (1-based linear index).  Real
// families return a real value in the real component; FourierExp values are
// genuinely complex, which is why the return type is complex for all kinds.
std::complex<double> eval_point(const BasisFamily& family, int l, double x);

// (F phi_l)(omega) with the convention (Ff)(y) = integral f(x) e^{-2 pi i x y} dx.
// Haar and FourierExp use closed forms (removable singularities get a two-term
// series inside |argument| < 1e-8); Legendre uses the spherical-Bessel form
// F L~_j(omega) = sqrt((2j+1)/2) * 2 (-i)^j j_j(2 pi omega).
std::complex<double> eval_fourier(const BasisFamily& family, int l, double omega);

// Independent verification oracle: the same transform by composite 64-node
// Gauss-Legendre quadrature with pieces split at the basis function's
// breakpoints and subdivided against the oscillation of e^{-2 pi i omega x}.
// Absolute error <= 1e-12 over the tested ranges.
std::complex<double> fourier_oracle(const BasisFamily& family, int l, double omega);

// Composite Gauss-Legendre quadrature of a complex integrand over [a, b],
// split into `pieces` equal sub-intervals with 64 nodes each.  Shared by the
// oracle and by sample synthesis for functions without a closed-form
// transform.
template <typename F>
std::complex<double> composite_gauss_legendre(F&& integrand, double a, double b, int pieces);

namespace detail {
// 64-point Gauss-Legendre nodes/weights on [-1, 1] (computed once by Newton
// iteration on P_64; deterministic).
const double* gauss_nodes_64();
const double* gauss_weights_64();

// (F L~_0 .. F L~_{jmax})(omega) in one pass: a single spherical-Bessel
// recurrence serves the whole row, which is what section assembly wants.
std::vector<std::complex<double>> legendre_fourier_row(int jmax, double omega);
}  // namespace detail

template <typename F>
std::complex<double> composite_gauss_legendre(F&& integrand, double a, double b, int pieces) {
  const double* xs = detail::gauss_nodes_64();
  const double* ws = detail::gauss_weights_64();
  std::complex<double> total = 0.0;
  const double width = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    const double half = 0.5 * width;
    std::complex<double> piece = 0.0;
    for (int q = 0; q < 64; ++q) {
      piece += ws[q] * integrand(mid + half * xs[q]);
    }
    total += half * piece;
  }
  return total;
}

}  // namespace gensamp
