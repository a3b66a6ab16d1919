#include <benchmark/benchmark.h>

#include "ea/comparability.hpp"
#include "ea/instances.hpp"

namespace {

ea::InstanceOptions unvalidated() {
  ea::InstanceOptions o;
  o.validate = false;
  return o;
}

void BM_ValidateAxiomsMv83(benchmark::State& state) {
  const auto inst = ea::make_mv_product(8, 3, unvalidated());
  for (auto _ : state) benchmark::DoNotOptimize(ea::validate_axioms(inst.algebra()));
}
BENCHMARK(BM_ValidateAxiomsMv83)->Unit(benchmark::kMillisecond);

void BM_ValidateBaseMv83(benchmark::State& state) {
  const auto inst = ea::make_mv_product(8, 3, unvalidated());
  for (auto _ : state) benchmark::DoNotOptimize(ea::validate_base(inst.base));
}
BENCHMARK(BM_ValidateBaseMv83)->Unit(benchmark::kMillisecond);

void BM_SpectralityReportMv42(benchmark::State& state) {
  const auto inst = ea::make_mv_product(4, 2, unvalidated());
  for (auto _ : state) benchmark::DoNotOptimize(ea::spectrality_report(inst.base));
}
BENCHMARK(BM_SpectralityReportMv42)->Unit(benchmark::kMillisecond);

void BM_Blocks(benchmark::State& state) {
  const auto inst = ea::make_boolean(static_cast<unsigned>(state.range(0)), unvalidated());
  for (auto _ : state) benchmark::DoNotOptimize(ea::blocks(inst.base));
}
BENCHMARK(BM_Blocks)->Arg(3)->Arg(5);

}  // namespace
