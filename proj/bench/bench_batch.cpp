// Serial reference vs OpenMP batch kernels, and squeezed vs plain thinning.
#include "ghshot/batch.hpp"

#include <benchmark/benchmark.h>

using namespace ghshot;

namespace {

BatchSpec spec_for(double lambda, double tau, bool squeeze)
{
    BatchSpec s;
    s.params.gig = {lambda, 1.0, 0.1};
    s.truncation.tau = tau;
    s.envelope = default_envelope(s.params.gig, squeeze);
    s.seed = 2024;
    return s;
}

constexpr std::size_t kPaths = 2000;

void BM_endpoints_serial(benchmark::State& st)
{
    const BatchSpec s = spec_for(-0.8, 0.01, true);
    for (auto _ : st)
        benchmark::DoNotOptimize(endpoint_batch_serial(s, kPaths));
    st.SetItemsProcessed(st.iterations() * kPaths);
}

void BM_endpoints_parallel(benchmark::State& st)
{
    const BatchSpec s = spec_for(-0.8, 0.01, true);
    set_threads(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(endpoint_batch(s, kPaths));
    st.SetItemsProcessed(st.iterations() * kPaths);
}

void BM_oracle_serial(benchmark::State& st)
{
    const GHParams p = spec_for(-0.8, 0.01, true).params;
    for (auto _ : st)
        benchmark::DoNotOptimize(oracle_batch_serial(p, 1, 20 * kPaths));
    st.SetItemsProcessed(st.iterations() * 20 * kPaths);
}

void BM_oracle_parallel(benchmark::State& st)
{
    const GHParams p = spec_for(-0.8, 0.01, true).params;
    set_threads(static_cast<int>(st.range(0)));
    for (auto _ : st)
        benchmark::DoNotOptimize(oracle_batch(p, 1, 20 * kPaths));
    st.SetItemsProcessed(st.iterations() * 20 * kPaths);
}

// range(0): lambda * 10, range(1): squeeze on/off.
void BM_gig_thinning(benchmark::State& st)
{
    const BatchSpec s = spec_for(-0.1 * double(st.range(0)), 0.01, st.range(1) != 0);
    set_threads(1);
    for (auto _ : st)
        benchmark::DoNotOptimize(gig_sum_batch(s, kPaths));
    st.SetItemsProcessed(st.iterations() * kPaths);
}

}  // namespace

BENCHMARK(BM_endpoints_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_endpoints_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_oracle_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_oracle_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_gig_thinning)
    ->ArgsProduct({{6, 8, 10, 15}, {0, 1}})
    ->ArgNames({"lambda_x10", "squeeze"})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
