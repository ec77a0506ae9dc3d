// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <vector>

#include "mabeam/mabeam.hpp"

namespace {

using namespace mabeam;

const std::vector<Angle> kThree = to_angles(std::vector<double>{30, 82, 100});

void BM_ClosedFormPositions(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<double> deg;
  for (std::size_t k = 0; k < prime_factorize(n).count(); ++k) deg.push_back(3.0 + 17.0 * static_cast<double>(k));
  const Scenario s(n, Angle(90), to_angles(deg));
  for (auto _ : state) benchmark::DoNotOptimize(theorem1_apv(s));
}
BENCHMARK(BM_ClosedFormPositions)->Arg(8)->Arg(64)->Arg(1024);

void BM_ZeroForcing(benchmark::State& state) {
  const Apv ula = ula_apv(static_cast<int>(state.range(0)), kHalfWavelength);
  for (auto _ : state) benchmark::DoNotOptimize(zf_weights(ula, Angle(90), kThree));
}
BENCHMARK(BM_ZeroForcing)->Arg(8)->Arg(64);

void BM_PatternSweep(benchmark::State& state) {
  const Apv apv = theorem1_apv(Scenario(8, Angle(90), kThree)).apv;
  const Awv w = matched_filter_weights(apv, Angle(90));
  for (auto _ : state) benchmark::DoNotOptimize(pattern_sweep(apv, w, Angle(0), 180.0, 0.1));
}
BENCHMARK(BM_PatternSweep);

void BM_LatticeSearch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<Angle> one{Angle(30)};
  std::uint64_t points = 0;
  for (auto _ : state) {
    const GridSearchReport r = grid_min_loss(n, Angle(90), one, 2.0, 1e-2, 0.5, 1);
    points += r.evaluated;
    benchmark::DoNotOptimize(r.best_loss);
  }
  state.counters["points/s"] = benchmark::Counter(static_cast<double>(points), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_LatticeSearch)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
