// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include "fieldcount/bounds/sqfree.hpp"
#include "fieldcount/fields/enumerate.hpp"

using namespace fieldcount;

namespace {

fields::SweepSpec cubic_spec() {
    const algebra::Integer X(200000);
    const auto sched = fields::stage_schedule(3, X);
    return {3, static_cast<int>(sched.size()) - 1, sched.back(), X, true};
}

void BM_SweepSerial(benchmark::State& state) {
    const auto spec = cubic_spec();
    const fields::Registry reg;
    for (auto _ : state) benchmark::DoNotOptimize(fields::sweep_stage_serial(spec, reg));
}

void BM_SweepParallel(benchmark::State& state) {
    const auto spec = cubic_spec();
    const fields::Registry reg;
    for (auto _ : state) benchmark::DoNotOptimize(fields::sweep_stage_parallel(spec, reg));
}

const algebra::MPoly& disc_poly() {
    static const auto f = algebra::MPoly::parse("-4*a^3 - 27*b^2");
    return f;
}

void BM_SquarefreeSerial(benchmark::State& state) {
    const std::vector<bounds::Range> box{{-120, 120}, {-120, 120}};
    for (auto _ : state) benchmark::DoNotOptimize(bounds::count_squarefree_values(disc_poly(), box, false));
}

void BM_SquarefreeParallel(benchmark::State& state) {
    const std::vector<bounds::Range> box{{-120, 120}, {-120, 120}};
    for (auto _ : state) benchmark::DoNotOptimize(bounds::count_squarefree_values(disc_poly(), box, true));
}

void BM_DensitySerial(benchmark::State& state) {
    const std::vector<bounds::Range> box{{-60, 60}, {-60, 60}};
    for (auto _ : state) benchmark::DoNotOptimize(bounds::sqfree_density_serial(disc_poly(), box, 30));
}

void BM_DensityParallel(benchmark::State& state) {
    const std::vector<bounds::Range> box{{-60, 60}, {-60, 60}};
    for (auto _ : state) benchmark::DoNotOptimize(bounds::sqfree_density(disc_poly(), box, 30));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SquarefreeSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SquarefreeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensitySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DensityParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
