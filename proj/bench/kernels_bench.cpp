// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "gfred/catalog.hpp"
#include "gfred/kernels.hpp"
#include "gfred/random.hpp"

namespace {

using namespace gfred;

FiniteGroupoid bench_groupoid(int units) {
  std::vector<std::string> names;
  for (int i = 0; i < units; ++i) names.push_back("u" + std::to_string(i));
  return direct_product(pair_groupoid(names), group_groupoid(FiniteGroup::symmetric(3)));
}

Vector random_values(int n, Rng& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = {normal(rng), normal(rng)};
  return v;
}

template <Vector (*Convolve)(const FiniteGroupoid&, const Vector&, const Vector&)>
void BM_Convolve(benchmark::State& state) {
  const FiniteGroupoid g = bench_groupoid(static_cast<int>(state.range(0)));
  Rng rng(1);
  const Vector f = random_values(g.num_arrows(), rng), h = random_values(g.num_arrows(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(Convolve(g, f, h));
  state.counters["arrows"] = g.num_arrows();
}

template <std::vector<double> (*Norms)(const FiniteGroupoid&, const Vector&)>
void BM_RegularNorms(benchmark::State& state) {
  const FiniteGroupoid g = bench_groupoid(static_cast<int>(state.range(0)));
  Rng rng(2);
  const Vector f = random_values(g.num_arrows(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(Norms(g, f));
}

template <std::vector<double> (*Moduli)(const std::vector<Complex>&, int)>
void BM_SymbolModuli(benchmark::State& state) {
  const std::vector<Complex> c = {{1.0, 0.5}, {-2.0, 0.0}, {3.0, 0.0}, {-2.0, 0.0}, {1.0, -0.5}};
  for (auto _ : state) benchmark::DoNotOptimize(Moduli(c, static_cast<int>(state.range(0))));
}

template <std::vector<std::vector<double>> (*Sections)(const BandOperator&, const std::vector<long>&)>
void BM_SectionSweep(benchmark::State& state) {
  const BandOperator a = catalog::laplacian_with_limits(-1.0, 5.0);
  const std::vector<long> sizes = {state.range(0), 2 * state.range(0), 4 * state.range(0)};
  for (auto _ : state) benchmark::DoNotOptimize(Sections(a, sizes));
}

BENCHMARK(BM_Convolve<kernels::serial::convolve>)->Arg(4)->Arg(8);
BENCHMARK(BM_Convolve<kernels::omp::convolve>)->Arg(4)->Arg(8);
BENCHMARK(BM_RegularNorms<kernels::serial::regular_norms>)->Arg(4)->Arg(8);
BENCHMARK(BM_RegularNorms<kernels::omp::regular_norms>)->Arg(4)->Arg(8);
BENCHMARK(BM_SymbolModuli<kernels::serial::symbol_moduli>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SymbolModuli<kernels::omp::symbol_moduli>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SectionSweep<kernels::serial::section_singular_values>)->Arg(128)->Arg(256);
BENCHMARK(BM_SectionSweep<kernels::omp::section_singular_values>)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
