#include <random>

#include <benchmark/benchmark.h>

#include "kronspin/hamiltonian.hpp"
#include "kronspin/kron.hpp"
#include "kronspin/linalg.hpp"

using namespace kronspin;

namespace {

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (Complex& z : m.entries()) z = {dist(rng), dist(rng)};
  return m;
}

ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix m = random_matrix(n, seed);
  return scale(0.5, add(m, conj_transpose(m)));
}

}  // namespace

static void BM_kron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix a = random_matrix(n, 1);
  const ComplexMatrix b = random_matrix(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n * n * sizeof(Complex)));
}
BENCHMARK(BM_kron)->RangeMultiplier(2)->Range(4, 32);

static void BM_eigh_jacobi(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(eigh_jacobi(h, false));
}
BENCHMARK(BM_eigh_jacobi)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

static void BM_eigh_tridiagonal(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(eigh_tridiagonal(h, false));
}
BENCHMARK(BM_eigh_tridiagonal)->RangeMultiplier(2)->Range(8, 512)->Unit(benchmark::kMicrosecond);

static void BM_build_general_chain(benchmark::State& state) {
  const HamiltonianSpec spec = HamiltonianSpec::chain(static_cast<int>(state.range(0)), 1.0, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(build_general(spec));
}
BENCHMARK(BM_build_general_chain)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
