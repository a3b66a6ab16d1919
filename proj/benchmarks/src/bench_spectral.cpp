#include <benchmark/benchmark.h>

#include "ea/instances.hpp"
#include "ea/spectral.hpp"

namespace {

void BM_SplittingTreeMv83(benchmark::State& state) {
  const auto inst = ea::make_mv_product(8, 3);
  const ea::Elem a = ea::mv_element(inst, {2, 4, 7});
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ea::splitting_tree(inst.base, a, n));
}
BENCHMARK(BM_SplittingTreeMv83)->Arg(4)->Arg(8)->Arg(16);

void BM_BinaryResolutionMv83(benchmark::State& state) {
  const auto inst = ea::make_mv_product(8, 3);
  const ea::Elem a = ea::mv_element(inst, {3, 5, 6});
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ea::binary_resolution(inst.base, a, n));
}
BENCHMARK(BM_BinaryResolutionMv83)->Arg(4)->Arg(8)->Arg(16);

void BM_ClosedFormMv83(benchmark::State& state) {
  const auto inst = ea::make_mv_product(8, 3);
  const ea::Elem a = ea::mv_element(inst, {2, 4, 7});
  const auto n = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ea::closed_form_mv_resolution(inst, a, n));
}
BENCHMARK(BM_ClosedFormMv83)->Arg(4)->Arg(8)->Arg(16);

void BM_RationalResolution(benchmark::State& state) {
  const auto inst = ea::make_mv_product(8, 3);
  const ea::Elem a = ea::mv_element(inst, {2, 4, 7});
  for (auto _ : state) benchmark::DoNotOptimize(ea::rational_resolution(inst.base, a, ea::Rational(1, 3), 16));
}
BENCHMARK(BM_RationalResolution);

}  // namespace
