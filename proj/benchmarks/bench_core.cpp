#include <benchmark/benchmark.h>

#include <cmath>

#include "difflat/autocorr.hpp"
#include "difflat/diffraction.hpp"

using namespace difflat;

namespace {

Lattice hexagonal() {
  Matrix b(2, 2);
  b << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
  return Lattice(b);
}

void BM_EnumerateBall(benchmark::State& state) {
  const Lattice lat = hexagonal();
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ball(lat, r).size());
}
BENCHMARK(BM_EnumerateBall)->RangeMultiplier(2)->Range(16, 256);

void BM_ExpSum(benchmark::State& state) {
  const auto comb = generate(WeightRule::bernoulli(0.3, 1), hexagonal(), static_cast<double>(state.range(0)));
  const Vector k = make_vector({0.1234, 0.5678});
  for (auto _ : state) benchmark::DoNotOptimize(exp_sum(comb, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(comb.size()));
}
BENCHMARK(BM_ExpSum)->RangeMultiplier(2)->Range(25, 200);

void BM_DiffractionGrid(benchmark::State& state) {
  const Lattice lat(Matrix::Identity(2, 2));
  const auto comb = generate(WeightRule::bernoulli(0.3, 1), lat, 50.0);
  const auto grid = fundamental_domain_grid(lat.dual(), static_cast<int>(state.range(0)), DomainMode::voronoi);
  for (auto _ : state) benchmark::DoNotOptimize(diffraction_grid(comb, grid, DomainMode::voronoi).samples.size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_DiffractionGrid)->Arg(16)->Arg(32)->Arg(64);

void BM_Autocorrelation(benchmark::State& state) {
  const auto comb = generate(WeightRule::bernoulli(0.5, 2), Lattice(Matrix::Identity(2, 2)), 100.0);
  const double z_max = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(autocorrelation(comb, z_max).entries.size());
}
BENCHMARK(BM_Autocorrelation)->Arg(2)->Arg(5)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
