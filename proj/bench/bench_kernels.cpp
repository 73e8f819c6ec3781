// Serial reference vs OpenMP kernels on the default scenario.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "pathsim/pipeline.hpp"
#include "pathsim/rng.hpp"

using namespace pathsim;

namespace {

const DataTable& prepared() {
    static const DataTable t = prepare_features(generate(default_scenario()));
    return t;
}

BootstrapOptions boot(std::size_t resamples) {
    BootstrapOptions o;
    o.resamples = resamples;
    return o;
}

void BM_BootstrapSerial(benchmark::State& state) {
    const auto model = default_model_config().mediation;
    for (auto _ : state)
        benchmark::DoNotOptimize(bootstrap_indirect_serial(prepared(), model, boot(static_cast<std::size_t>(state.range(0)))));
}

void BM_BootstrapParallel(benchmark::State& state) {
    const auto model = default_model_config().mediation;
    for (auto _ : state)
        benchmark::DoNotOptimize(bootstrap_indirect(prepared(), model, boot(static_cast<std::size_t>(state.range(0)))));
}

std::vector<std::vector<double>> wide_columns(std::size_t k, std::size_t n) {
    std::vector<std::vector<double>> cols(k, std::vector<double>(n));
    for (std::size_t j = 0; j < k; ++j) {
        RngStream rng(7, j);
        for (auto& v : cols[j]) v = rng.standard_normal();
    }
    return cols;
}

void BM_CorrelationSerial(benchmark::State& state) {
    const auto cols = wide_columns(static_cast<std::size_t>(state.range(0)), 2000);
    const std::vector<std::span<const double>> views(cols.begin(), cols.end());
    for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix_serial(views));
}

void BM_CorrelationParallel(benchmark::State& state) {
    const auto cols = wide_columns(static_cast<std::size_t>(state.range(0)), 2000);
    const std::vector<std::span<const double>> views(cols.begin(), cols.end());
    for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(views));
}

}  // namespace

BENCHMARK(BM_BootstrapSerial)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapParallel)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelationSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrelationParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
