// Serial reference sweep against the OpenMP sweep on the same corpus.

#include <benchmark/benchmark.h>

#include "qbounds/search.hpp"

using namespace qbounds;

namespace {

const CorpusSpec& corpus() {
  static const CorpusSpec spec = CorpusSpec::parse("enumerate:3..6");
  return spec;
}

const std::vector<std::string> kBounds{"main_q1q2", "t1_sandwich:safe", "gm_qanalog:base"};

void BM_SweepSerial(benchmark::State& state) {
  const SubsetPolicy subsets = SubsetPolicy::parse("all-singletons");
  for (auto _ : state) {
    SweepReport r = run_sweep_serial(corpus(), kBounds, subsets);
    benchmark::DoNotOptimize(r.instances);
    state.counters["instances"] = static_cast<double>(r.instances);
  }
}

void BM_SweepParallel(benchmark::State& state) {
  const SubsetPolicy subsets = SubsetPolicy::parse("all-singletons");
  SweepOptions opt;
  opt.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SweepReport r = run_sweep(corpus(), kBounds, subsets, opt);
    benchmark::DoNotOptimize(r.instances);
    state.counters["instances"] = static_cast<double>(r.instances);
  }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
