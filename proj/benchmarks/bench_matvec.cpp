#include <benchmark/benchmark.h>

#include "kronspin/hamiltonian.hpp"
#include "kronspin/matfree.hpp"

using namespace kronspin;

// Full chain Hamiltonian: n Zeeman terms plus 3 (n - 1) exchange terms.
static void BM_matvec_chain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KronSum op = spec_to_kronsum(HamiltonianSpec::chain(n, 1.0, 0.5));
  const StateVector x = StateVector::random(n, 1);
  std::vector<Complex> y(x.size());
  for (auto _ : state) {
    matvec_accumulate(op, x.amplitudes(), y, 1);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(op.terms().size() * x.size()));
  state.counters["terms"] = static_cast<double>(op.terms().size());
}
BENCHMARK(BM_matvec_chain)->DenseRange(10, 20, 2)->Unit(benchmark::kMillisecond);

// Fixed term count, so time should double per added site.
static void BM_matvec_fixed_terms(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  KronSum op(n);
  for (int t = 0; t < 16; ++t) {
    const int site = t % (n - 1) + 1;
    const Local2 s = pauli_local(kPauliAxes[static_cast<std::size_t>(t % 3)]);
    op.add_pair(1.0, site, s, site + 1, s);
  }
  const StateVector x = StateVector::random(n, 2);
  std::vector<Complex> y(x.size());
  for (auto _ : state) {
    matvec_accumulate(op, x.amplitudes(), y, 1);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(16 * x.size()));
}
BENCHMARK(BM_matvec_fixed_terms)->DenseRange(12, 20, 1)->Unit(benchmark::kMillisecond);

// A single term acting on every site goes through the scratch-buffer path.
static void BM_matvec_all_sites(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  KronTerm term{1.0, std::vector<std::optional<Local2>>(static_cast<std::size_t>(n))};
  for (auto& f : term.factors) f = pauli_local(PauliAxis::x);
  KronSum op(n);
  op.add_term(term);
  const StateVector x = StateVector::random(n, 3);
  std::vector<Complex> y(x.size());
  for (auto _ : state) {
    matvec_accumulate(op, x.amplitudes(), y, 1);
    benchmark::DoNotOptimize(y.data());
  }
}
BENCHMARK(BM_matvec_all_sites)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);

static void BM_lanczos_chain(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const KronSum op = spec_to_kronsum(HamiltonianSpec::chain(n, 1.0));
  LanczosOptions opt;
  opt.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(lanczos_extremal(op, opt).eigenvalues);
}
BENCHMARK(BM_lanczos_chain)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
