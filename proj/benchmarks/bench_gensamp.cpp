// Micro-benchmarks for the hot paths: section assembly (cold vs. cached),
// Gram eigenvalues, the least-squares solve, the direct SVD, the Psi~ search,
// and the batched Legendre transform row.
#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "gensamp/bases.hpp"
#include "gensamp/constants.hpp"
#include "gensamp/numerics.hpp"
#include "gensamp/sections.hpp"
#include "gensamp/solver.hpp"

namespace {

using namespace gensamp;

SamplingScheme haar_scheme() { return SamplingScheme(0.5, BasisFamily::haar()); }

void BM_SectionCold(benchmark::State& state) {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme = haar_scheme();
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(std::ceil(4.9 * n));
  for (auto _ : state) {
    clear_section_cache();
    SectionMatrix section = build_section(haar, scheme, m, n);
    benchmark::DoNotOptimize(section.block.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m) * n);
}

void BM_SectionWarm(benchmark::State& state) {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme = haar_scheme();
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(std::ceil(4.9 * n));
  build_section(haar, scheme, m, n);  // populate the row cache
  for (auto _ : state) {
    SectionMatrix section = build_section(haar, scheme, m, n);
    benchmark::DoNotOptimize(section.block.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m) * n);
}

void BM_GramEigenvalues(benchmark::State& state) {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme = haar_scheme();
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(std::ceil(4.9 * n));
  const SectionMatrix section = build_section(haar, scheme, m, n);
  for (auto _ : state) {
    ComplexMatrix gram = section.block.adjoint() * section.block;
    RealVector eigs = hermitian_eigenvalues(gram);
    benchmark::DoNotOptimize(eigs.data());
  }
}

void BM_LeastSquaresSolve(benchmark::State& state) {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme = haar_scheme();
  const int n = static_cast<int>(state.range(0));
  const int m = static_cast<int>(std::ceil(4.9 * n));
  const SectionMatrix section = build_section(haar, scheme, m, n);
  CoefficientLcg lcg(7);
  ComplexVector b(m);
  for (int i = 0; i < m; ++i) {
    b(i) = lcg.next();
  }
  for (auto _ : state) {
    ComplexVector x = least_squares_solve(section.block, b);
    benchmark::DoNotOptimize(x.data());
  }
}

void BM_MinSingularValue(benchmark::State& state) {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme = haar_scheme();
  const SectionMatrix square = build_square_section(haar, scheme, 100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(min_singular_value(square.block));
  }
}

void BM_PsiTilde(benchmark::State& state) {
  const BasisFamily haar = BasisFamily::haar();
  const SamplingScheme scheme = haar_scheme();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(psi_tilde(haar, scheme, ThresholdQuery{n, 1.0}));
  }
}

void BM_LegendreFourierRow(benchmark::State& state) {
  const int jmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto row = detail::legendre_fourier_row(jmax, 37.25);
    benchmark::DoNotOptimize(row.data());
  }
  state.SetItemsProcessed(state.iterations() * (jmax + 1));
}

BENCHMARK(BM_SectionCold)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SectionWarm)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GramEigenvalues)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LeastSquaresSolve)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MinSingularValue)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PsiTilde)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LegendreFourierRow)->Arg(50)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
