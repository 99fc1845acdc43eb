#include "gensamp/sections.hpp"

#include <bit>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace gensamp {

namespace {

// Nyquist check with a one-part-in-10^12 grace so that eps = 1/(2T) written as
// a rounded decimal still passes.
void check_nyquist(double eps, double T) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("SamplingScheme: support radius must be positive");
  }
  if (!(eps > 0.0)) {
    throw std::invalid_argument("SamplingScheme: epsilon must be positive");
  }
  if (eps * 2.0 * T > 1.0 + 1e-12) {
    throw std::domain_error(
        "SamplingScheme: eps exceeds the Nyquist rate 1/(2T) for this support");
  }
}

struct RowKey {
  int kind = 0;
  std::uint64_t eps_bits = 0;
  std::uint64_t family_bits = 0;  // FourierExp basis spacing; zero otherwise
  long row = 0;

  bool operator==(const RowKey&) const = default;
};

struct RowKeyHash {
  std::size_t operator()(const RowKey& k) const {
    std::size_t h = std::hash<int>{}(k.kind);
    const auto mix = [&h](std::size_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(std::hash<std::uint64_t>{}(k.eps_bits));
    mix(std::hash<std::uint64_t>{}(k.family_bits));
    mix(std::hash<long>{}(k.row));
    return h;
  }
};

// Row prefixes above this length are recomputed on demand instead of cached,
// bounding the cache at a few megabytes even for the very wide tail blocks of
// the K_{n,m,M} sweeps.
constexpr int kCacheColumnCap = 1024;

std::shared_mutex cache_mutex;
std::unordered_map<RowKey, std::vector<std::complex<double>>, RowKeyHash> row_cache;

RowKey make_key(const BasisFamily& family, const SamplingScheme& scheme, long row) {
  RowKey key;
  key.kind = static_cast<int>(family.kind);
  key.eps_bits = std::bit_cast<std::uint64_t>(scheme.epsilon);
  key.family_bits = family.kind == BasisKind::FourierExp
                        ? std::bit_cast<std::uint64_t>(family.fourier_eps)
                        : 0;
  key.row = row;
  return key;
}

// Extends `row` so it holds the transforms of columns 1..need at frequency w.
// Legendre restarts the whole Bessel recurrence (one pass serves the row);
// the closed-form families append entry by entry.
void extend_row(const BasisFamily& family, double w, std::vector<std::complex<double>>& row,
                int need) {
  if (static_cast<int>(row.size()) >= need) {
    return;
  }
  if (family.kind == BasisKind::Legendre) {
    row = detail::legendre_fourier_row(need - 1, w);
    return;
  }
  row.reserve(need);
  for (int l = static_cast<int>(row.size()) + 1; l <= need; ++l) {
    row.push_back(eval_fourier(family, l, w));
  }
}

}  // namespace

SamplingScheme::SamplingScheme(double eps, double support_radius)
    : epsilon(eps), T(support_radius) {
  check_nyquist(eps, support_radius);
}

SamplingScheme::SamplingScheme(double eps, const BasisFamily& family)
    : SamplingScheme(eps, family.support_radius()) {}

long rho_int(long i) {
  if (i < 1) {
    throw std::invalid_argument("rho_int: index must be >= 1");
  }
  return (i % 2 == 0) ? i / 2 : -((i - 1) / 2);
}

double rho(long i, double epsilon) { return epsilon * static_cast<double>(rho_int(i)); }

SectionMatrix build_section(const BasisFamily& family, const SamplingScheme& scheme,
                            int m, int n, int col_offset) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("build_section: block dimensions must be >= 1");
  }
  if (col_offset < 0) {
    throw std::invalid_argument("build_section: column offset must be >= 0");
  }
  // The scheme may have been constructed against a different family; the
  // Nyquist condition has to hold for the family actually being sampled.
  check_nyquist(scheme.epsilon, family.support_radius());

  const int need = col_offset + n;
  ComplexMatrix block(m, n);
  std::vector<std::complex<double>> row;
  for (int i = 1; i <= m; ++i) {
    const RowKey key = make_key(family, scheme, i);
    row.clear();
    {
      std::shared_lock lock(cache_mutex);
      const auto it = row_cache.find(key);
      if (it != row_cache.end()) {
        row = it->second;
      }
    }
    const int had = static_cast<int>(row.size());
    if (had < need) {
      extend_row(family, rho(i, scheme.epsilon), row, need);
      const int store = std::min(need, kCacheColumnCap);
      if (store > had) {
        std::unique_lock lock(cache_mutex);
        auto& slot = row_cache[key];
        if (static_cast<int>(slot.size()) < store) {
          slot.assign(row.begin(), row.begin() + store);
        }
      }
    }
    for (int l = 0; l < n; ++l) {
      block(i - 1, l) = row[col_offset + l];
    }
  }
  return SectionMatrix{std::move(block), scheme, family, col_offset};
}

SectionMatrix build_square_section(const BasisFamily& family, const SamplingScheme& scheme,
                                   int m) {
  return build_section(family, scheme, m, m, 0);
}

void clear_section_cache() {
  std::unique_lock lock(cache_mutex);
  row_cache.clear();
}

}  // namespace gensamp
