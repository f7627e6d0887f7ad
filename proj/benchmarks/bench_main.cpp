#include <benchmark/benchmark.h>

#include "superpluecker/cluster.hpp"
#include "superpluecker/pluecker.hpp"
#include "superpluecker/supermatrix.hpp"

using namespace superpluecker;

namespace {

std::vector<Parity> standard(std::size_t p, std::size_t q) {
  std::vector<Parity> v(p, Parity::Even);
  v.insert(v.end(), q, Parity::Odd);
  return v;
}

void BM_GrassmannMul(benchmark::State& state) {
  const auto gens = static_cast<unsigned>(state.range(0));
  SampleProfile profile;
  profile.odd_mode = OddMode::Pooled;
  profile.soul_terms = 4;
  Rng rng(1);
  GeneratorPool pool(gens);
  auto x = sample_even(rng, pool, profile) * sample_even(rng, pool, profile);
  auto y = sample_even(rng, pool, profile) * sample_odd(rng, pool, profile);
  for (auto _ : state) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_GrassmannMul)->Arg(8)->Arg(12)->Arg(16);

void BM_Ber(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const auto q = static_cast<std::size_t>(state.range(1));
  SampleProfile profile;
  profile.odd_mode = OddMode::Pooled;
  Rng rng(2);
  GeneratorPool pool(8);
  SuperMatrix m;
  for (;;) {
    m = sample_supermatrix(rng, pool, profile, standard(p, q), standard(p, q));
    if (is_invertible(det(blocks(m).a00)) && is_invertible(det(blocks(m).a11))) break;
  }
  for (auto _ : state) benchmark::DoNotOptimize(ber(m));
}
BENCHMARK(BM_Ber)->Args({2, 1})->Args({3, 2});

void BM_ReducedCoords(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  const PlaneShape shape{r, 1, n, 1};
  Rng rng(3);
  const auto u = sample_plane(rng, shape, static_cast<unsigned>(shape.odd_entries() + 4), SampleProfile{});
  for (auto _ : state) benchmark::DoNotOptimize(reduced_coords_r1_n1(u));
}
BENCHMARK(BM_ReducedCoords)->Args({2, 4})->Args({3, 5})->Unit(benchmark::kMillisecond);

void BM_ExchangeGraph(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exchange_graph(n));
}
BENCHMARK(BM_ExchangeGraph)->DenseRange(6, 9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
