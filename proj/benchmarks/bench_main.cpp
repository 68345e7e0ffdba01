#include <benchmark/benchmark.h>

#include "basisorder/bounds.hpp"
#include "basisorder/order_engine.hpp"
#include "basisorder/periodic_set.hpp"
#include "basisorder/sweep.hpp"

namespace {

using basisorder::EventuallyPeriodicSet;

void BM_Sumset(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto a = EventuallyPeriodicSet::periodic(n, {1, n / 3, n / 2});
  const auto b = EventuallyPeriodicSet({0, 2, 5}, 6, n / 2, {0, 1});
  for (auto _ : state) benchmark::DoNotOptimize(basisorder::sumset(a, b));
}
BENCHMARK(BM_Sumset)->RangeMultiplier(4)->Range(16, 4096);

void BM_HFold(benchmark::State& state) {
  const auto a = EventuallyPeriodicSet::periodic(192, {1, 48});
  const auto h = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(basisorder::h_fold(a, h));
}
BENCHMARK(BM_HFold)->Arg(8)->Arg(64)->Arg(191);

void BM_OrderSection2(benchmark::State& state) {
  const auto inst = basisorder::section2_instance(3, 4);
  const auto rest = basisorder::remove_finite(inst.a, inst.x);
  for (auto _ : state) benchmark::DoNotOptimize(basisorder::order(rest));
}
BENCHMARK(BM_OrderSection2)->Unit(benchmark::kMillisecond);

void BM_CyclicOrder(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const basisorder::CyclicSubset c(n, {1, n / 4});
  for (auto _ : state) benchmark::DoNotOptimize(basisorder::cyclic_order(c));
}
BENCHMARK(BM_CyclicOrder)->Arg(64)->Arg(1024)->Arg(8192);

void BM_KlopschLev(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(basisorder::klopsch_lev_exhaustive(n));
}
BENCHMARK(BM_KlopschLev)->DenseRange(12, 18, 3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
