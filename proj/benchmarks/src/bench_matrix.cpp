#include <benchmark/benchmark.h>

#include <random>

#include "ea/matrix.hpp"
#include "ea/spectral.hpp"

namespace {

void BM_MatrixResolution(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  ea::MatrixEffectAlgebra E(dim);
  ea::MatrixBackend b(E);
  std::mt19937_64 rng(1);
  const ea::Matrix a = ea::random_effect(dim, rng, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(ea::binary_resolution(b, a, 8));
}
BENCHMARK(BM_MatrixResolution)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_MatrixVerify(benchmark::State& state) {
  ea::MatrixEffectAlgebra E(3);
  ea::MatrixBackend b(E);
  std::mt19937_64 rng(2);
  const ea::Matrix a = ea::random_effect(3, rng, 0.05);
  const auto res = ea::binary_resolution(b, a, 6);
  for (auto _ : state) benchmark::DoNotOptimize(ea::verify_resolution(b, a, res));
}
BENCHMARK(BM_MatrixVerify)->Unit(benchmark::kMicrosecond);

}  // namespace
