#include <benchmark/benchmark.h>

#include "ea/group.hpp"

namespace {

void BM_GroupSpectral(benchmark::State& state) {
  ea::LatticeGroup G({1, 2, 3, 4});
  const ea::GroupElement g{2, -3, 5, -8};
  for (auto _ : state) benchmark::DoNotOptimize(ea::group_spectral(G, g, ea::Rational(1, 3)));
}
BENCHMARK(BM_GroupSpectral);

void BM_VerifyGroupResolution(benchmark::State& state) {
  ea::LatticeGroup G({1, 2, 3, 4});
  const ea::GroupElement g{2, -3, 5, -8};
  for (auto _ : state)
    benchmark::DoNotOptimize(ea::verify_group_resolution(G, g, {ea::Rational(1, 3), ea::Rational(-1, 2)}));
}
BENCHMARK(BM_VerifyGroupResolution)->Unit(benchmark::kMicrosecond);

void BM_DyadicApproximation(benchmark::State& state) {
  ea::LatticeGroup G({1, 2, 3, 4});
  const ea::GroupElement g{2, -3, 5, -8};
  std::vector<std::int64_t> grid;
  for (std::int64_t m = -40; m <= 40; ++m) grid.push_back(m);
  for (auto _ : state) benchmark::DoNotOptimize(ea::dyadic_approximation(G, g, grid, 16));
}
BENCHMARK(BM_DyadicApproximation)->Unit(benchmark::kMicrosecond);

}  // namespace
