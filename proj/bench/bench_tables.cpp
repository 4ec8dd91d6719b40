// Serial reference vs OpenMP table builds.

#include "padic/kernel.hpp"
#include "padic/polyseq.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace padic;

const SequenceSpec kLegendre3{seq::LegendreAt{ExactRational(3)}};
const SequenceSpec kDsum{seq::PartialSumCentralBinomial{}};

void BM_Serial(benchmark::State& state, const SequenceSpec& spec) {
    const auto N = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(build_table_serial(spec, Prime(3), N));
}

void BM_Parallel(benchmark::State& state, const SequenceSpec& spec, TableStrategy strategy) {
    const auto N = static_cast<std::uint64_t>(state.range(0));
    BuildOptions options;
    options.strategy = strategy;
    for (auto _ : state) benchmark::DoNotOptimize(build_table(spec, Prime(3), N, options));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Serial, legendre3, kLegendre3)->Arg(200)->Arg(600);
BENCHMARK_CAPTURE(BM_Parallel, legendre3_direct, kLegendre3, TableStrategy::Direct)
    ->Arg(200)->Arg(600);
BENCHMARK_CAPTURE(BM_Parallel, legendre3_incremental, kLegendre3, TableStrategy::Incremental)
    ->Arg(200)->Arg(600)->Arg(5000);
BENCHMARK_CAPTURE(BM_Serial, dsum, kDsum)->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_Parallel, dsum_direct, kDsum, TableStrategy::Direct)->Arg(500)->Arg(2000);
BENCHMARK_CAPTURE(BM_Parallel, dsum_incremental, kDsum, TableStrategy::Incremental)
    ->Arg(500)->Arg(2000)->Arg(20000);

BENCHMARK_MAIN();
