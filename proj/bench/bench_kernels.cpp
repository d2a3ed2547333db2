// Serial references against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cmath>

#include "henon/assembly.hpp"
#include "henon/grid.hpp"
#include "henon/second_variation.hpp"
#include "henon/sweep.hpp"

namespace {

henon::FormCoefficients coefficients(const henon::RadialGrid& g) {
  henon::FormCoefficients c;
  for (double r : g.quadPoints()) {
    c.grad.push_back(1.0 + r * r);
    c.angular.push_back(3.0 * std::exp(-r));
    c.mass.push_back(std::cos(r));
  }
  return c;
}

void BM_AssemblySerial(benchmark::State& state) {
  const auto g = henon::buildGrid(4, static_cast<int>(state.range(0)), 400.0);
  const auto c = coefficients(*g);
  for (auto _ : state) benchmark::DoNotOptimize(henon::assembleRadialFormSerial(*g, c));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g->cells()));
}

void BM_AssemblyParallel(benchmark::State& state) {
  const auto g = henon::buildGrid(4, static_cast<int>(state.range(0)), 400.0);
  const auto c = coefficients(*g);
  for (auto _ : state) benchmark::DoNotOptimize(henon::assembleRadialForm(*g, c));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g->cells()));
}

const std::vector<double> kQ{2.5, 3.0, 3.5};
const std::vector<double> kAlpha{100.0, 200.0};

henon::secondvar::AnalyzeOptions scanOptions() {
  henon::secondvar::AnalyzeOptions o;
  o.refinement = 3;
  return o;
}

void BM_ScanSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(henon::secondvar::positivityScanSerial(4, 2.0, kQ, kAlpha, scanOptions()));
  }
}

void BM_ScanParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(henon::secondvar::positivityScan(4, 2.0, kQ, kAlpha, scanOptions()));
  }
}

henon::sweep::SweepConfig sweepConfig() {
  henon::sweep::SweepConfig cfg;
  cfg.refine = 3;
  for (double q : {2.5, 3.0, 3.5}) {
    for (double alpha : {50.0, 100.0}) cfg.points.push_back({4, 2.0, q, alpha});
  }
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto cfg = sweepConfig();
  for (auto _ : state) benchmark::DoNotOptimize(henon::sweep::runSweepSerial(cfg));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto cfg = sweepConfig();
  for (auto _ : state) benchmark::DoNotOptimize(henon::sweep::runSweep(cfg));
}

}  // namespace

BENCHMARK(BM_AssemblySerial)->Arg(6)->Arg(9)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_AssemblyParallel)->Arg(6)->Arg(9)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
