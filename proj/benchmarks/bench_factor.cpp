#include <benchmark/benchmark.h>

#include "nbcrit/cholesky.hpp"
#include "nbcrit/scan.hpp"

using namespace nbcrit;

static void BM_CholExtendRow(benchmark::State& st) {
    auto const n = st.range(0);
    auto const p = build_gram(n + 1);
    auto base = cholesky(build_gram(n));
    auto const row = p.lower_row(n + 1);
    for (auto _ : st) {
        st.PauseTiming();
        auto f = base;
        st.ResumeTiming();
        chol_extend(f, row);
        benchmark::DoNotOptimize(f.packed().data());
    }
}
BENCHMARK(BM_CholExtendRow)->Arg(250)->Arg(1000);

static void BM_BuildGram(benchmark::State& st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(build_gram(st.range(0)).packed().data());
    }
}
BENCHMARK(BM_BuildGram)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_DnSeries(benchmark::State& st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(dn_series(st.range(0)).back().d);
    }
}
BENCHMARK(BM_DnSeries)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_Scan(benchmark::State& st) {
    ScanOptions o;
    o.k_max = st.range(0);
    for (auto _ : st) {
        benchmark::DoNotOptimize(scan_positivity(o).min_margin);
    }
}
BENCHMARK(BM_Scan)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);
