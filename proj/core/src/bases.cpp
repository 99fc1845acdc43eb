#include "gensamp/bases.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gensamp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::complex<double> kI{0.0, 1.0};

void check_haar_width(const BasisFamily& family) {
  if (family.wavelet_width != 1.0) {
    throw std::invalid_argument("HaarSystem: only wavelet width a = 1 is implemented");
  }
}

double sinc(double u);

// F phi for the Haar scaling function phi = chi_[0,1):
// (1 - e^{-2 pi i w}) / (2 pi i w) = e^{-i pi w} sinc(w).  The polar form
// avoids the 1 - e^{-i theta} cancellation near w = 0 entirely.
std::complex<double> haar_scaling_transform(double w) {
  return std::polar(1.0, -kPi * w) * sinc(w);
}

// F psi for the mother wavelet psi = chi_[0,1/2) - chi_[1/2,1):
// (1 - e^{-pi i w})^2 / (2 pi i w) = 2i sin^2(pi w / 2) e^{-i pi w} / (pi w),
// with value 0 at w = 0; stable at every w for the same reason.
std::complex<double> haar_wavelet_transform(double w) {
  if (w == 0.0) {
    return {0.0, 0.0};
  }
  const double half = std::sin(0.5 * kPi * w);
  const double ratio = 2.0 * half * half / (kPi * w);
  return std::complex<double>(0.0, ratio) * std::polar(1.0, -kPi * w);
}

double sinc(double u) {
  // Exact at integers: sin(pi k)/(pi k) evaluated in floating point leaves a
  // ~1e-17 residue that would break the exact-recovery special cases.
  const double r = std::nearbyint(u);
  if (u == r) {
    return r == 0.0 ? 1.0 : 0.0;
  }
  if (std::abs(u) < 1e-8) {
    return 1.0 - kPi * kPi * u * u / 6.0;
  }
  return std::sin(kPi * u) / (kPi * u);
}

// rho_int duplicated here (sections depends on bases, not the reverse):
// 1 -> 0, 2 -> 1, 3 -> -1, 4 -> 2, ...
long fourier_exp_wave_number(int l) {
  return (l % 2 == 0) ? l / 2 : -((static_cast<long>(l) - 1) / 2);
}

// j_0 .. j_nmax at z >= 0.  Upward recurrence where it is stable (z clearly
// beyond the largest order); otherwise Miller's downward recurrence,
// normalized against j_0 or j_1, whichever is away from a zero.
std::vector<double> spherical_bessel_upto(int nmax, double z) {
  std::vector<double> out(nmax + 1, 0.0);
  if (z == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double j0 = std::sin(z) / z;
  const double j1 = std::sin(z) / (z * z) - std::cos(z) / z;
  if (z > nmax + 25.0) {
    out[0] = j0;
    if (nmax >= 1) {
      out[1] = j1;
    }
    for (int k = 1; k < nmax; ++k) {
      out[k + 1] = (2.0 * k + 1.0) / z * out[k] - out[k - 1];
    }
    return out;
  }
  // The downward start must clear the turning point n ~ z with a safety
  // margin, whichever of nmax and z is larger, or the seed contamination
  // survives to the low orders.
  const int base = std::max(nmax, static_cast<int>(std::ceil(z)));
  const int start = base + std::max(20, static_cast<int>(std::ceil(std::sqrt(40.0 * base))));
  std::vector<double> f(start + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-10;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = (2.0 * k + 1.0) / z * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int q = k - 1; q <= start + 1; ++q) {
        f[q] *= 1e-250;
      }
    }
  }
  // The two anchors interlace zeros, so at least one is usable.
  const double scale = (std::abs(j0) >= 0.1 * std::abs(j1)) ? j0 / f[0] : j1 / f[1];
  for (int k = 0; k <= nmax; ++k) {
    out[k] = f[k] * scale;
  }
  return out;
}

std::complex<double> minus_i_pow(int j) {
  switch (j & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

double legendre_poly(int degree, double x) {
  double p0 = 1.0;
  if (degree == 0) {
    return p0;
  }
  double p1 = x;
  for (int j = 1; j < degree; ++j) {
    const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

BasisFamily BasisFamily::haar() {
  BasisFamily f;
  f.kind = BasisKind::HaarSystem;
  f.support_lo = 0.0;
  f.support_hi = 1.0;
  f.riesz_lower = 1.0;
  f.riesz_upper = 1.0;
  f.decay_C = 2.0;
  f.decay_p = 1;
  f.wavelet_width = 1.0;
  return f;
}

BasisFamily BasisFamily::legendre() {
  BasisFamily f;
  f.kind = BasisKind::Legendre;
  f.support_lo = -1.0;
  f.support_hi = 1.0;
  f.riesz_lower = 1.0;
  f.riesz_upper = 1.0;
  f.decay_C = 2.0;
  f.decay_p = 1;
  return f;
}

BasisFamily BasisFamily::fourier_exp(double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("fourier_exp: eps must be positive");
  }
  BasisFamily f;
  f.kind = BasisKind::FourierExp;
  f.support_lo = -0.5 / eps;
  f.support_hi = 0.5 / eps;
  f.riesz_lower = 1.0;
  f.riesz_upper = 1.0;
  f.decay_C = 1.0;
  f.decay_p = 1;
  f.fourier_eps = eps;
  return f;
}

HaarIndex decode_haar_index(int l) {
  if (l < 1) {
    throw std::invalid_argument("decode_haar_index: index must be >= 1");
  }
  HaarIndex idx;
  if (l == 1) {
    idx.is_scaling = true;
    return idx;
  }
  const int u = l - 1;
  idx.level = static_cast<int>(std::floor(std::log2(static_cast<double>(u))));
  // Guard against log2 landing a hair below an exact power of two.
  if ((1 << (idx.level + 1)) <= u) {
    ++idx.level;
  }
  idx.shift = u - (1 << idx.level);
  return idx;
}

std::complex<double> eval_point(const BasisFamily& family, int l, double x) {
  if (l < 1) {
    throw std::invalid_argument("eval_point: index must be >= 1");
  }
  switch (family.kind) {
    case BasisKind::HaarSystem: {
      check_haar_width(family);
      const HaarIndex idx = decode_haar_index(l);
      if (idx.is_scaling) {
        return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
      }
      const double y = std::ldexp(x, idx.level) - idx.shift;  // 2^j x - k
      double psi = 0.0;
      if (y >= 0.0 && y < 0.5) {
        psi = 1.0;
      } else if (y >= 0.5 && y < 1.0) {
        psi = -1.0;
      }
      return std::pow(2.0, 0.5 * idx.level) * psi;
    }
    case BasisKind::Legendre: {
      if (x < -1.0 || x > 1.0) {
        return 0.0;
      }
      const int degree = l - 1;
      return std::sqrt((2.0 * degree + 1.0) / 2.0) * legendre_poly(degree, x);
    }
    case BasisKind::FourierExp: {
      const double eps = family.fourier_eps;
      if (x < family.support_lo || x > family.support_hi) {
        return 0.0;
      }
      const double freq = eps * fourier_exp_wave_number(l);
      return std::sqrt(eps) * std::exp(2.0 * kPi * kI * freq * x);
    }
  }
  throw std::logic_error("eval_point: unknown basis kind");
}

std::complex<double> eval_fourier(const BasisFamily& family, int l, double omega) {
  if (l < 1) {
    throw std::invalid_argument("eval_fourier: index must be >= 1");
  }
  switch (family.kind) {
    case BasisKind::HaarSystem: {
      check_haar_width(family);
      const HaarIndex idx = decode_haar_index(l);
      if (idx.is_scaling) {
        return haar_scaling_transform(omega);
      }
      // F psi_{j,k}(w) = 2^{-j/2} e^{-2 pi i k w / 2^j} F psi(w / 2^j)
      const double scaled = std::ldexp(omega, -idx.level);
      return std::pow(2.0, -0.5 * idx.level) *
             std::exp(-2.0 * kPi * kI * (idx.shift * scaled)) * haar_wavelet_transform(scaled);
    }
    case BasisKind::Legendre: {
      const int degree = l - 1;
      const double z = 2.0 * kPi * std::abs(omega);
      const std::vector<double> jn = spherical_bessel_upto(degree, z);
      std::complex<double> value =
          std::sqrt((2.0 * degree + 1.0) / 2.0) * 2.0 * minus_i_pow(degree) * jn[degree];
      return omega < 0.0 ? std::conj(value) : value;
    }
    case BasisKind::FourierExp: {
      const double eps = family.fourier_eps;
      const double u = (omega - eps * fourier_exp_wave_number(l)) / eps;
      return sinc(u) / std::sqrt(eps);
    }
  }
  throw std::logic_error("eval_fourier: unknown basis kind");
}

std::complex<double> fourier_oracle(const BasisFamily& family, int l, double omega) {
  if (l < 1) {
    throw std::invalid_argument("fourier_oracle: index must be >= 1");
  }
  // Smooth pieces of the basis function, between which the integrand has no
  // kinks; each piece is then subdivided against the total oscillation of the
  // integrand so that 64 Gauss nodes stay far inside their accuracy range.
  std::vector<double> breaks;
  double intrinsic = 0.0;  // extra oscillation of phi_l itself, cycles per unit
  switch (family.kind) {
    case BasisKind::HaarSystem: {
      check_haar_width(family);
      const HaarIndex idx = decode_haar_index(l);
      if (idx.is_scaling) {
        breaks = {0.0, 1.0};
      } else {
        const double width = std::ldexp(1.0, -idx.level);
        const double lo = idx.shift * width;
        breaks = {lo, lo + 0.5 * width, lo + width};
      }
      break;
    }
    case BasisKind::Legendre:
      breaks = {-1.0, 1.0};
      intrinsic = 0.5 * (l - 1);  // P_j oscillates ~j times over [-1,1]
      break;
    case BasisKind::FourierExp:
      breaks = {family.support_lo, family.support_hi};
      intrinsic = std::abs(family.fourier_eps * fourier_exp_wave_number(l));
      break;
  }
  std::complex<double> total = 0.0;
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double a = breaks[p];
    const double b = breaks[p + 1];
    const double cycles = (std::abs(omega) + intrinsic) * (b - a);
    const int pieces = std::max(1, static_cast<int>(std::ceil(cycles / 4.0)));
    total += composite_gauss_legendre(
        [&](double x) {
          return eval_point(family, l, x) * std::exp(-2.0 * kPi * kI * (omega * x));
        },
        a, b, pieces);
  }
  return total;
}

namespace detail {

std::vector<std::complex<double>> legendre_fourier_row(int jmax, double omega) {
  const double z = 2.0 * kPi * std::abs(omega);
  const std::vector<double> jn = spherical_bessel_upto(jmax, z);
  std::vector<std::complex<double>> row(jmax + 1);
  for (int j = 0; j <= jmax; ++j) {
    std::complex<double> value =
        std::sqrt((2.0 * j + 1.0) / 2.0) * 2.0 * minus_i_pow(j) * jn[j];
    row[j] = omega < 0.0 ? std::conj(value) : value;
  }
  return row;
}

namespace {

struct GaussTable {
  double nodes[64];
  double weights[64];
};

// Nodes are the roots of P_64, found by Newton iteration from the Chebyshev
// initial guess; weights are 2 / ((1 - x^2) P_64'(x)^2).
GaussTable compute_gauss_table() {
  GaussTable table;
  const int n = 64;
  for (int i = 0; i < n / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 1; j < n; ++j) {
        const double p2 = ((2.0 * j + 1.0) * x * p1 - j * p0) / (j + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // One final polish after convergence.
        if (iter > 0) {
          break;
        }
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    table.nodes[i] = -x;
    table.nodes[n - 1 - i] = x;
    table.weights[i] = w;
    table.weights[n - 1 - i] = w;
  }
  return table;
}

const GaussTable& gauss_table() {
  static const GaussTable table = compute_gauss_table();
  return table;
}

}  // namespace

const double* gauss_nodes_64() { return gauss_table().nodes; }
const double* gauss_weights_64() { return gauss_table().weights; }

}  // namespace detail

}  // namespace gensamp
