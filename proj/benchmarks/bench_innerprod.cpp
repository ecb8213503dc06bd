#include <benchmark/benchmark.h>

#include "nbcrit/innerprod.hpp"

#include <numeric>

using namespace nbcrit;

static void BM_IpVasyunin(benchmark::State& st) {
    auto const k = st.range(0);
    std::int64_t j = k / 2 + 1;
    for (auto _ : st) {
        benchmark::DoNotOptimize(ip_vasyunin(j, k));
        j = j == k ? k / 2 + 1 : j + 1;
    }
    st.SetComplexityN(k);
}
BENCHMARK(BM_IpVasyunin)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oN);

static void BM_IpDft(benchmark::State& st) {
    auto const j = st.range(0);
    auto const k = j + 1;
    auto const m = std::lcm(j, k);
    for (auto _ : st) {
        benchmark::DoNotOptimize(ip_dft(j, k, m));
    }
    st.counters["m"] = static_cast<double>(m);
}
BENCHMARK(BM_IpDft)->Arg(8)->Arg(20)->Arg(40);

static void BM_IpSeries(benchmark::State& st) {
    auto const j = st.range(0);
    for (auto _ : st) {
        benchmark::DoNotOptimize(ip_series(j, j + 1));
    }
}
BENCHMARK(BM_IpSeries)->Arg(8)->Arg(40)->Arg(300);

static void BM_TableBuild(benchmark::State& st) {
    for (auto _ : st) {
        VasyuninTable table(st.range(0));
        benchmark::DoNotOptimize(table.cot_sum(st.range(0)));
    }
}
BENCHMARK(BM_TableBuild)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

// one full Gram row, the inner loop of the scan
static void BM_TableRow(benchmark::State& st) {
    auto const k = st.range(0);
    VasyuninTable const table(k);
    for (auto _ : st) {
        double s = 0.0;
        for (std::int64_t j = 2; j <= k; ++j) {
            s += table.ip(j, k);
        }
        benchmark::DoNotOptimize(s);
    }
    st.SetItemsProcessed(st.iterations() * (k - 1));
}
BENCHMARK(BM_TableRow)->Arg(500)->Arg(2000);

static void BM_ALambda(benchmark::State& st) {
    for (auto _ : st) {
        benchmark::DoNotOptimize(a_lambda(1.0, static_cast<double>(st.range(0))));
    }
}
BENCHMARK(BM_ALambda)->Arg(1000)->Arg(10000);
