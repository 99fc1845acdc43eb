#include "gensamp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gensamp/bases.hpp"
#include "gensamp/constants.hpp"
#include "gensamp/numerics.hpp"
#include "gensamp/sections.hpp"
#include "gensamp/solver.hpp"

namespace gensamp {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

// Tracks the files one run creates so that a failure removes them before the
// exception escapes; commit() disarms the cleanup.
class CsvSet {
 public:
  explicit CsvSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  CsvSet(const CsvSet&) = delete;
  CsvSet& operator=(const CsvSet&) = delete;

  ~CsvSet() {
    if (!committed_) {
      for (const auto& p : written_) {
        std::error_code ec;
        fs::remove(p, ec);
      }
    }
  }

  std::ofstream open(const std::string& name, const std::string& config,
                     const std::string& header) {
    const fs::path p = dir_ / name;
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open output file " + p.string());
    }
    written_.push_back(p);
    out << "# config: " << config << "\n" << header << "\n";
    return out;
  }

  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

void ensure_written(std::ofstream& out, const std::string& name) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + name);
  }
}

struct Allowed {
  bool epsilon = false;
  bool n = false;
  bool m = false;
  bool grid = false;
  bool seed = false;
};

void check_overrides(const ExperimentConfig& cfg, const Allowed& allowed) {
  if (cfg.epsilon && !allowed.epsilon) {
    throw std::invalid_argument(cfg.id + ": --epsilon is not used by this experiment");
  }
  if (cfg.n && !allowed.n) {
    throw std::invalid_argument(cfg.id + ": --n is not used by this experiment");
  }
  if (cfg.m && !allowed.m) {
    throw std::invalid_argument(cfg.id + ": --m is not used by this experiment");
  }
  if (cfg.grid && !allowed.grid) {
    throw std::invalid_argument(cfg.id + ": --grid is not used by this experiment");
  }
  if (cfg.seed && !allowed.seed) {
    throw std::invalid_argument(cfg.id + ": --seed is not used by this experiment");
  }
}

void require(bool ok, const std::string& message) {
  if (!ok) {
    throw std::invalid_argument(message);
  }
}

std::string eps_tag(double eps) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d", static_cast<int>(std::llround(eps * 1000.0)));
  return buf;
}

std::vector<double> midpoint_grid(double a, double b, int count) {
  std::vector<double> grid(count);
  for (int i = 0; i < count; ++i) {
    grid[i] = a + (b - a) * (i + 0.5) / count;
  }
  return grid;
}

std::vector<double> real_part(const std::vector<std::complex<double>>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].real();
  }
  return out;
}

// ---------------------------------------------------------------------------
// fig-instability: ||(P_m U P_m)^{-1}|| for the consistent square sections.
// Haar sweeps eps in {1, 7/8, 1/2, 1/8} with m = 1..100; Legendre can only be
// swept over the Nyquist-admissible spacings eps <= 1/2, with m = 2..50
// step 2.
// ---------------------------------------------------------------------------
void run_fig_instability(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .m = true});
  const int m_haar = cfg.m.value_or(100);
  const int m_leg = cfg.m.value_or(50);
  require(m_haar >= 1, "fig-instability: --m must be >= 1");
  std::vector<double> eps_list;
  if (cfg.epsilon) {
    require(*cfg.epsilon > 0.0 && *cfg.epsilon <= 1.0 + 1e-12,
            "fig-instability: --epsilon must lie in (0, 1] (Haar Nyquist range)");
    eps_list = {*cfg.epsilon};
  } else {
    eps_list = {1.0, 0.875, 0.5, 0.125};
  }

  CsvSet files(cfg.out_dir);
  const BasisFamily haar = BasisFamily::haar();
  const BasisFamily legendre = BasisFamily::legendre();
  int n_files = 0;
  int n_skipped = 0;
  for (const double eps : eps_list) {
    const SamplingScheme scheme(eps, haar);
    std::ostringstream config;
    config << "id=fig-instability family=haar epsilon=" << fmt(eps) << " m=1.." << m_haar;
    const std::string name = "instability_haar_eps" + eps_tag(eps) + ".csv";
    std::ofstream out = files.open(name, config.str(), "m,inv_norm");
    for (int m = 1; m <= m_haar; ++m) {
      const SectionMatrix square = build_square_section(haar, scheme, m);
      const double sigma = min_singular_value(square.block);
      const double inv = sigma > 0.0 ? 1.0 / sigma : std::numeric_limits<double>::infinity();
      out << m << ',' << fmt(inv) << '\n';
    }
    ensure_written(out, name);
    ++n_files;
  }
  for (const double eps : eps_list) {
    if (eps > 0.5 + 1e-12) {
      ++n_skipped;  // outside the Legendre Nyquist range
      continue;
    }
    const SamplingScheme scheme(eps, legendre);
    std::ostringstream config;
    config << "id=fig-instability family=legendre epsilon=" << fmt(eps) << " m=2.." << m_leg
           << " step=2";
    const std::string name = "instability_legendre_eps" + eps_tag(eps) + ".csv";
    std::ofstream out = files.open(name, config.str(), "m,inv_norm");
    for (int m = 2; m <= m_leg; m += 2) {
      const SectionMatrix square = build_square_section(legendre, scheme, m);
      const double sigma = min_singular_value(square.block);
      const double inv = sigma > 0.0 ? 1.0 / sigma : std::numeric_limits<double>::infinity();
      out << m << ',' << fmt(inv) << '\n';
    }
    ensure_written(out, name);
    ++n_files;
  }
  files.commit();
  summary << "fig-instability: wrote " << n_files << " files (Haar m=1.." << m_haar
          << ", Legendre m=2.." << m_leg << ")";
  if (n_skipped > 0) {
    summary << "; skipped " << n_skipped << " Legendre spacings above the Nyquist rate 1/2";
  }
  summary << '\n';
}

// ---------------------------------------------------------------------------
// fig-legendre: the Runge function 1/(1+16x^2) on [-1,1].
//   legendre_runge_uneven.csv      n = 4..20 step 2, m = 4 n^2 (converges)
//   legendre_runge_consistent.csv  n = 4..20 step 2, m = n     (diverges)
//   legendre_runge_projection.csv  ||f - P_{W_m} f|| at m = 4 n^2 + 1
// ---------------------------------------------------------------------------
void run_fig_legendre(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .n = true, .grid = true});
  const double eps = cfg.epsilon.value_or(0.5);
  require(eps > 0.0 && eps <= 0.5 + 1e-12,
          "fig-legendre: --epsilon must lie in (0, 1/2] (Legendre Nyquist range)");
  const int n_max = cfg.n.value_or(20);
  require(n_max >= 4, "fig-legendre: --n must be >= 4");
  const int grid_size = cfg.grid.value_or(4096);
  require(grid_size >= 2, "fig-legendre: --grid must be >= 2");

  const BasisFamily family = BasisFamily::legendre();
  const SamplingScheme scheme(eps, family);
  const GSpec g{family, ComplexVector(), GSpec::Extra::Runge};

  const std::vector<double> grid = midpoint_grid(-1.0, 1.0, grid_size);
  const std::vector<double> weights(grid.size(), 2.0 / grid_size);
  std::vector<std::complex<double>> reference(grid.size());
  for (std::size_t q = 0; q < grid.size(); ++q) {
    reference[q] = eval_gspec_point(g, grid[q]);
  }

  const int m_max = 4 * n_max * n_max + 1;
  const SampleVector all_samples = synthesize_samples(g, scheme, m_max);

  std::ostringstream config;
  config << "id=fig-legendre epsilon=" << fmt(eps) << " n=4.." << n_max
         << " step=2 grid=" << grid_size;

  CsvSet files(cfg.out_dir);
  std::ofstream uneven =
      files.open("legendre_runge_uneven.csv", config.str() + " m=4n^2", "n,l2_error");
  std::ofstream consistent =
      files.open("legendre_runge_consistent.csv", config.str() + " m=n", "n,l2_error");
  std::ofstream projection =
      files.open("legendre_runge_projection.csv", config.str() + " m=4n^2+1", "m,l2_error");

  double first_uneven = 0.0;
  double last_uneven = 0.0;
  double last_consistent = 0.0;
  for (int n = 4; n <= n_max; n += 2) {
    const int m = 4 * n * n;
    const SampleVector head{all_samples.values.head(m), scheme};
    const ReconstructionResult fit =
        solve_uneven(build_section(family, scheme, m, n), head);
    const ErrorMetrics err =
        error_metrics(eval_reconstruction(fit, grid), reference, weights);
    uneven << n << ',' << fmt(err.l2) << '\n';
    if (n == 4) {
      first_uneven = err.l2;
    }
    last_uneven = err.l2;

    const SampleVector square_head{all_samples.values.head(n), scheme};
    const ReconstructionResult square_fit =
        solve_consistent(build_square_section(family, scheme, n), square_head);
    const ErrorMetrics square_err =
        error_metrics(eval_reconstruction(square_fit, grid), reference, weights);
    consistent << n << ',' << fmt(square_err.l2) << '\n';
    last_consistent = square_err.l2;

    const int m_odd = 4 * n * n + 1;
    const SampleVector odd_head{all_samples.values.head(m_odd), scheme};
    const ErrorMetrics proj_err =
        error_metrics(baseline_truncated_fourier(odd_head, grid), reference, weights);
    projection << m_odd << ',' << fmt(proj_err.l2) << '\n';
  }
  ensure_written(uneven, "legendre_runge_uneven.csv");
  ensure_written(consistent, "legendre_runge_consistent.csv");
  ensure_written(projection, "legendre_runge_projection.csv");
  files.commit();
  summary << "fig-legendre: uneven l2 error " << fmt(first_uneven) << " (n=4) -> "
          << fmt(last_uneven) << " (n=" << n_max << "); consistent error reaches "
          << fmt(last_consistent) << '\n';
}

// ---------------------------------------------------------------------------
// fig-knmm: K_{n,m,M} against M for the Haar family, default panels
// (n=75, m=350) and (n=100, m=400), M = 100..6000 step 100 (M > n).
// ---------------------------------------------------------------------------
void knmm_panel(std::ofstream& out, const BasisFamily& family, const SamplingScheme& scheme,
                int n, int m, int M_max, int M_step, double* final_value) {
  const SectionMatrix head = build_section(family, scheme, m, n);
  ComplexMatrix gram(n, n);
  gram.noalias() = head.block.adjoint() * head.block;
  Eigen::LDLT<ComplexMatrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error("fig-knmm: Gram factorization failed");
  }
  ComplexMatrix cross(n, 0);
  int filled = n;  // columns n+1..filled of U are present in `cross`
  for (int M = M_step; M <= M_max; M += M_step) {
    if (M <= n) {
      continue;
    }
    const SectionMatrix tail = build_section(family, scheme, m, M - filled, filled);
    cross.conservativeResize(Eigen::NoChange, M - n);
    cross.rightCols(M - filled).noalias() = head.block.adjoint() * tail.block;
    filled = M;
    const ComplexMatrix solved = ldlt.solve(cross);
    *final_value = operator_norm(solved);
    out << M << ',' << fmt(*final_value) << '\n';
  }
}

void run_fig_knmm(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .n = true, .m = true});
  const double eps = cfg.epsilon.value_or(0.5);
  require(eps > 0.0 && eps <= 1.0 + 1e-12,
          "fig-knmm: --epsilon must lie in (0, 1] (Haar Nyquist range)");
  const BasisFamily family = BasisFamily::haar();
  const SamplingScheme scheme(eps, family);
  constexpr int kMMax = 6000;
  constexpr int kMStep = 100;

  std::vector<std::pair<int, int>> panels;
  if (cfg.n || cfg.m) {
    const int n = cfg.n.value_or(75);
    const int m = cfg.m.value_or(static_cast<int>(std::ceil(4.9 * n)));
    require(n >= 1 && m >= n, "fig-knmm: need n >= 1 and m >= n");
    panels = {{n, m}};
  } else {
    panels = {{75, 350}, {100, 400}};
  }

  CsvSet files(cfg.out_dir);
  std::vector<std::string> notes;
  for (const auto& [n, m] : panels) {
    std::ostringstream config;
    config << "id=fig-knmm epsilon=" << fmt(eps) << " n=" << n << " m=" << m << " M=" << kMStep
           << ".." << kMMax << " step=" << kMStep;
    const std::string name = "knmm_n" + std::to_string(n) + ".csv";
    std::ofstream out = files.open(name, config.str(), "M,k_lower");
    double final_value = 0.0;
    knmm_panel(out, family, scheme, n, m, kMMax, kMStep, &final_value);
    ensure_written(out, name);
    notes.push_back("n=" + std::to_string(n) + ": K -> " + fmt(final_value));
  }
  files.commit();
  summary << "fig-knmm: ";
  for (std::size_t i = 0; i < notes.size(); ++i) {
    summary << (i ? "; " : "") << notes[i];
  }
  summary << '\n';
}

// ---------------------------------------------------------------------------
// fig-psi: Psi~(U, n, theta) for theta = 1, 2 over n = 10..200 step 10.
// ---------------------------------------------------------------------------
void run_fig_psi(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .n = true});
  const double eps = cfg.epsilon.value_or(0.5);
  require(eps > 0.0 && eps <= 1.0 + 1e-12,
          "fig-psi: --epsilon must lie in (0, 1] (Haar Nyquist range)");
  const int n_max = cfg.n.value_or(200);
  require(n_max >= 10, "fig-psi: --n must be >= 10");
  const BasisFamily family = BasisFamily::haar();
  const SamplingScheme scheme(eps, family);

  CsvSet files(cfg.out_dir);
  double worst_ratio[2] = {0.0, 0.0};
  const double thetas[2] = {1.0, 2.0};
  for (int t = 0; t < 2; ++t) {
    std::ostringstream config;
    config << "id=fig-psi epsilon=" << fmt(eps) << " theta=" << fmt(thetas[t]) << " n=10.."
           << n_max << " step=10";
    const std::string name = "psi_theta" + std::to_string(t + 1) + ".csv";
    std::ofstream out = files.open(name, config.str(), "n,psi_tilde");
    for (int n = 10; n <= n_max; n += 10) {
      const int value = psi_tilde(family, scheme, ThresholdQuery{n, thetas[t]});
      out << n << ',' << value << '\n';
      worst_ratio[t] = std::max(worst_ratio[t], static_cast<double>(value) / n);
    }
    ensure_written(out, name);
  }
  files.commit();
  summary << "fig-psi: max psi~/n = " << fmt(worst_ratio[0]) << " (theta=1), "
          << fmt(worst_ratio[1]) << " (theta=2)\n";
}

// ---------------------------------------------------------------------------
// fig-stability: ||(eps A)^{-1}|| with m = ceil(4.9 n), n = 2..360 step 2.
// ---------------------------------------------------------------------------
void run_fig_stability(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .n = true});
  const double eps = cfg.epsilon.value_or(0.5);
  require(eps > 0.0 && eps <= 1.0 + 1e-12,
          "fig-stability: --epsilon must lie in (0, 1] (Haar Nyquist range)");
  const int n_max = cfg.n.value_or(360);
  require(n_max >= 2, "fig-stability: --n must be >= 2");
  const BasisFamily family = BasisFamily::haar();
  const SamplingScheme scheme(eps, family);

  std::ostringstream config;
  config << "id=fig-stability epsilon=" << fmt(eps) << " n=2.." << n_max
         << " step=2 m=ceil(4.9n)";
  CsvSet files(cfg.out_dir);
  std::ofstream out = files.open("stability.csv", config.str(), "n,scaled_inv_norm");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int n = 2; n <= n_max; n += 2) {
    const int m = static_cast<int>(std::ceil(4.9 * n));
    const double value = gram_inverse_norm(family, scheme, n, m) / eps;
    out << n << ',' << fmt(value) << '\n';
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  ensure_written(out, "stability.csv");
  files.commit();
  summary << "fig-stability: ||(eps A)^{-1}|| in [" << fmt(lo) << ", " << fmt(hi) << "] for n=2.."
          << n_max << '\n';
}

// Shared tail of the two reconstruction examples: writes the three CSV files.
struct ExampleOutput {
  std::vector<double> grid;
  std::vector<std::complex<double>> reference;
  std::vector<std::complex<double>> generalized;
  std::vector<std::complex<double>> baseline;
  std::vector<std::pair<std::string, std::string>> diagnostics;  // ordered key,value
};

void write_example_files(CsvSet& files, const std::string& config, const ExampleOutput& data) {
  std::ofstream recon = files.open(
      "reconstruction.csv", config,
      "x,reference,generalized,baseline,generalized_modulus,baseline_modulus");
  for (std::size_t q = 0; q < data.grid.size(); ++q) {
    recon << fmt(data.grid[q]) << ',' << fmt(data.reference[q].real()) << ','
          << fmt(data.generalized[q].real()) << ',' << fmt(data.baseline[q].real()) << ','
          << fmt(std::abs(data.generalized[q])) << ',' << fmt(std::abs(data.baseline[q]))
          << '\n';
  }
  ensure_written(recon, "reconstruction.csv");
}

void write_coefficients(CsvSet& files, const std::string& config, const ComplexVector& beta) {
  std::ofstream coeffs = files.open("coefficients.csv", config, "index,real,imag");
  for (int l = 0; l < beta.size(); ++l) {
    coeffs << (l + 1) << ',' << fmt(beta(l).real()) << ',' << fmt(beta(l).imag()) << '\n';
  }
  ensure_written(coeffs, "coefficients.csv");
}

void write_diagnostics(CsvSet& files, const std::string& config,
                       const std::vector<std::pair<std::string, std::string>>& entries) {
  std::ofstream diag = files.open("diagnostics.csv", config, "key,value");
  for (const auto& [key, value] : entries) {
    diag << key << ',' << value << '\n';
  }
  ensure_written(diag, "diagnostics.csv");
}

// ---------------------------------------------------------------------------
// ex-fourier-recon: g(t) = cos(2 pi t) chi_[1/2,1], Haar family, eps = 1/2,
// n = 500, m = 1801 (N = 900), compared against the truncated Fourier sum.
// ---------------------------------------------------------------------------
void run_ex_fourier(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .n = true, .m = true, .grid = true});
  const double eps = cfg.epsilon.value_or(0.5);
  require(eps > 0.0 && eps <= 1.0 + 1e-12,
          "ex-fourier-recon: --epsilon must lie in (0, 1] (Haar Nyquist range)");
  const int n = cfg.n.value_or(500);
  const int m = cfg.m.value_or(1801);
  require(n >= 1, "ex-fourier-recon: --n must be >= 1");
  require(m >= n, "ex-fourier-recon: --m must be >= n");
  require(m % 2 == 1, "ex-fourier-recon: --m must be odd (the baseline sum is symmetric)");
  const int grid_size = cfg.grid.value_or(4096);
  require(grid_size >= 2, "ex-fourier-recon: --grid must be >= 2");

  const BasisFamily family = BasisFamily::haar();
  const SamplingScheme scheme(eps, family);
  const GSpec g{family, ComplexVector(), GSpec::Extra::CosBump};

  const SampleVector samples = synthesize_samples(g, scheme, m);
  const ReconstructionResult fit = solve_uneven(build_section(family, scheme, m, n), samples);

  ExampleOutput data;
  data.grid = midpoint_grid(0.0, 1.0, grid_size);
  const std::vector<double> weights(grid_size, 1.0 / grid_size);
  data.reference.resize(data.grid.size());
  for (std::size_t q = 0; q < data.grid.size(); ++q) {
    data.reference[q] = eval_gspec_point(g, data.grid[q]);
  }
  data.generalized = eval_reconstruction(fit, data.grid);
  data.baseline = baseline_truncated_fourier(samples, data.grid);

  const ErrorMetrics err = error_metrics(data.generalized, data.reference, weights);
  const ErrorMetrics base_err = error_metrics(data.baseline, data.reference, weights);
  double max_imag = 0.0;
  for (const auto& v : data.generalized) {
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  const double k_tilde = std::sqrt(fit.inv_norm);

  std::ostringstream config;
  config << "id=ex-fourier-recon epsilon=" << fmt(eps) << " n=" << n << " m=" << m
         << " grid=" << grid_size;
  CsvSet files(cfg.out_dir);
  write_example_files(files, config.str(), data);
  write_coefficients(files, config.str(), fit.coefficients);
  write_diagnostics(files, config.str(),
                    {{"epsilon", fmt(eps)},
                     {"n", std::to_string(n)},
                     {"m", std::to_string(m)},
                     {"grid", std::to_string(grid_size)},
                     {"inv_norm", fmt(fit.inv_norm)},
                     {"k_tilde", fmt(k_tilde)},
                     {"l2_error", fmt(err.l2)},
                     {"linf_error", fmt(err.linf)},
                     {"l2_error_baseline", fmt(base_err.l2)},
                     {"linf_error_baseline", fmt(base_err.linf)},
                     {"max_imag_residue", fmt(max_imag)}});
  files.commit();
  summary << "ex-fourier-recon: inv_norm = " << fmt(fit.inv_norm) << ", k_tilde = "
          << fmt(k_tilde) << ", l2_error = " << fmt(err.l2) << " (baseline "
          << fmt(base_err.l2) << ")\n";
}

// ---------------------------------------------------------------------------
// ex-pointwise-recon: g = sum_{j=1}^{400} alpha_j phi_j + sin(2 pi t) chi_[0.3,0.6]
// with seeded coefficients; recovery of f = F g at the integers, compared
// against the truncated sinc series.
// ---------------------------------------------------------------------------
void run_ex_pointwise(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .n = true, .m = true, .grid = true, .seed = true});
  const double eps = cfg.epsilon.value_or(0.5);
  require(eps > 0.0 && eps <= 1.0 + 1e-12,
          "ex-pointwise-recon: --epsilon must lie in (0, 1] (Haar Nyquist range)");
  const int n = cfg.n.value_or(500);
  const int m = cfg.m.value_or(1201);
  require(n >= 1, "ex-pointwise-recon: --n must be >= 1");
  require(m >= n, "ex-pointwise-recon: --m must be >= n");
  const int half_range = cfg.grid.value_or(5000);
  require(half_range >= 1, "ex-pointwise-recon: --grid (half range) must be >= 1");
  const std::uint64_t seed = cfg.seed.value_or(42);
  constexpr int kNumCoeffs = 400;

  const BasisFamily family = BasisFamily::haar();
  const SamplingScheme scheme(eps, family);
  CoefficientLcg lcg(seed);
  ComplexVector alpha(kNumCoeffs);
  for (int j = 0; j < kNumCoeffs; ++j) {
    alpha(j) = lcg.next();
  }
  const GSpec g{family, std::move(alpha), GSpec::Extra::SinBump};

  const SampleVector samples = synthesize_samples(g, scheme, m);
  const ReconstructionResult fit = solve_uneven(build_section(family, scheme, m, n), samples);

  ExampleOutput data;
  data.grid.resize(2 * half_range + 1);
  for (int t = -half_range; t <= half_range; ++t) {
    data.grid[t + half_range] = static_cast<double>(t);
  }
  data.reference.resize(data.grid.size());
  for (std::size_t q = 0; q < data.grid.size(); ++q) {
    data.reference[q] = eval_gspec_fourier(g, data.grid[q]);
  }
  data.generalized = eval_reconstruction(fit, data.grid, /*transform_domain=*/true);
  data.baseline = baseline_sinc(samples, data.grid);

  const std::vector<double> weights(data.grid.size(), 1.0);
  const ErrorMetrics err = error_metrics(data.generalized, data.reference, weights);
  const ErrorMetrics base_err = error_metrics(data.baseline, data.reference, weights);

  // Far-field improvement: integer t in [4/5 H, H], where the sinc baseline
  // has no samples left and degrades to zero.
  double far_ref = 0.0;
  double far_err_gen = 0.0;
  double far_err_base = 0.0;
  for (std::size_t q = 0; q < data.grid.size(); ++q) {
    if (data.grid[q] < 0.8 * half_range) {
      continue;
    }
    far_ref = std::max(far_ref, std::abs(data.reference[q]));
    far_err_gen = std::max(far_err_gen, std::abs(data.generalized[q] - data.reference[q]));
    far_err_base = std::max(far_err_base, std::abs(data.baseline[q] - data.reference[q]));
  }
  const double ratio = far_err_gen > 0.0 ? far_err_base / far_err_gen
                                         : std::numeric_limits<double>::infinity();
  const double k_tilde = std::sqrt(fit.inv_norm);

  std::ostringstream config;
  config << "id=ex-pointwise-recon epsilon=" << fmt(eps) << " n=" << n << " m=" << m
         << " K=" << kNumCoeffs << " seed=" << seed << " grid=-" << half_range << ".."
         << half_range;
  CsvSet files(cfg.out_dir);
  write_example_files(files, config.str(), data);
  write_coefficients(files, config.str(), fit.coefficients);
  write_diagnostics(files, config.str(),
                    {{"epsilon", fmt(eps)},
                     {"n", std::to_string(n)},
                     {"m", std::to_string(m)},
                     {"coefficient_count", std::to_string(kNumCoeffs)},
                     {"seed", std::to_string(seed)},
                     {"grid_half_range", std::to_string(half_range)},
                     {"inv_norm", fmt(fit.inv_norm)},
                     {"k_tilde", fmt(k_tilde)},
                     {"l2_error", fmt(err.l2)},
                     {"linf_error", fmt(err.linf)},
                     {"l2_error_baseline", fmt(base_err.l2)},
                     {"linf_error_baseline", fmt(base_err.linf)},
                     {"far_field_reference_max", fmt(far_ref)},
                     {"far_field_error", fmt(far_err_gen)},
                     {"far_field_error_baseline", fmt(far_err_base)},
                     {"far_field_improvement", fmt(ratio)}});
  files.commit();
  summary << "ex-pointwise-recon: inv_norm = " << fmt(fit.inv_norm)
          << ", far-field improvement = " << fmt(ratio) << "x\n";
}

// ---------------------------------------------------------------------------
// shannon-check: FourierExp family with matching spacing; the square section
// is exactly (1/sqrt(eps)) I, so recovery of the sample values is exact.
// ---------------------------------------------------------------------------
void run_shannon(const ExperimentConfig& cfg, std::ostream& summary) {
  check_overrides(cfg, {.epsilon = true, .n = true, .m = true});
  const double eps = cfg.epsilon.value_or(0.5);
  require(eps > 0.0 && eps <= 0.5 + 1e-12,
          "shannon-check: --epsilon must lie in (0, 1/2] so the test signal fits the support");
  const int n = cfg.n.value_or(33);
  require(n >= 1, "shannon-check: --n must be >= 1");
  if (cfg.m) {
    require(*cfg.m == n, "shannon-check: the exact special case uses m = n");
  }

  const BasisFamily family = BasisFamily::fourier_exp(eps);
  const SamplingScheme scheme(eps, family);
  const GSpec g{family, ComplexVector(), GSpec::Extra::CosBump};

  const SampleVector samples = synthesize_samples(g, scheme, n);
  const ReconstructionResult fit = solve_uneven(build_section(family, scheme, n, n), samples);

  double max_err = 0.0;
  const double root_eps = std::sqrt(eps);
  for (int k = 1; k <= n; ++k) {
    const std::complex<double> expected = root_eps * eval_gspec_fourier(g, rho(k, eps));
    max_err = std::max(max_err, std::abs(fit.coefficients(k - 1) - expected));
  }
  const double tail = k_lower(family, scheme, n, n, n);  // M = m: exactly zero

  std::ostringstream config;
  config << "id=shannon-check epsilon=" << fmt(eps) << " n=" << n << " m=" << n;
  CsvSet files(cfg.out_dir);
  write_diagnostics(files, config.str(),
                    {{"epsilon", fmt(eps)},
                     {"n", std::to_string(n)},
                     {"m", std::to_string(n)},
                     {"max_coefficient_error", fmt(max_err)},
                     {"k_lower_at_m", fmt(tail)},
                     {"inv_norm", fmt(fit.inv_norm)}});
  files.commit();
  summary << "shannon-check: max coefficient error = " << fmt(max_err)
          << " (tolerance 1e-12); K_{n,m,M<=m} = " << fmt(tail) << '\n';
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {
      "fig-instability", "fig-legendre",     "fig-knmm",          "fig-psi",
      "fig-stability",   "ex-fourier-recon", "ex-pointwise-recon", "shannon-check"};
  return ids;
}

void run_experiment(const ExperimentConfig& cfg, std::ostream& summary) {
  if (cfg.id == "fig-instability") {
    run_fig_instability(cfg, summary);
  } else if (cfg.id == "fig-legendre") {
    run_fig_legendre(cfg, summary);
  } else if (cfg.id == "fig-knmm") {
    run_fig_knmm(cfg, summary);
  } else if (cfg.id == "fig-psi") {
    run_fig_psi(cfg, summary);
  } else if (cfg.id == "fig-stability") {
    run_fig_stability(cfg, summary);
  } else if (cfg.id == "ex-fourier-recon") {
    run_ex_fourier(cfg, summary);
  } else if (cfg.id == "ex-pointwise-recon") {
    run_ex_pointwise(cfg, summary);
  } else if (cfg.id == "shannon-check") {
    run_shannon(cfg, summary);
  } else {
    throw std::invalid_argument("unknown experiment id: " + cfg.id +
                                " (run with --help for the list)");
  }
}

}  // namespace gensamp
