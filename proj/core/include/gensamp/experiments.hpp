#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gensamp {

// One reproducible experiment run.  Overrides left empty take each
// experiment's documented default; they are validated against the
// experiment's preconditions (Nyquist admissibility, m >= n, ...).
struct ExperimentConfig {
  std::string id;  // fig-instability, fig-legendre, fig-knmm, fig-psi,
                   // fig-stability, ex-fourier-recon, ex-pointwise-recon,
                   // shannon-check
  std::filesystem::path out_dir = ".";
  std::optional<double> epsilon;
  std::optional<int> n;
  std::optional<int> m;
  std::optional<int> grid;
  std::optional<std::uint64_t> seed;
};

const std::vector<std::string>& experiment_ids();

// Runs the experiment, writing its CSV files into out_dir (created if needed)
// and a one-line summary to `summary`.  CSV output is deterministic: re-runs
// produce byte-identical files.  Throws std::invalid_argument for an unknown
// id or invalid overrides; on any failure partially written files from this
// run are removed before the exception propagates.
void run_experiment(const ExperimentConfig& config, std::ostream& summary);

}  // namespace gensamp
