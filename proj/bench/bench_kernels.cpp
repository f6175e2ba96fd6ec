// Serial reference vs OpenMP kernels on the workloads the scans spend their time in.
#include "besov/kernels.hpp"
#include "besov/normest.hpp"
#include "besov/quark.hpp"
#include "besov/restrict.hpp"
#include "besov/seqspace.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

using namespace besov;

namespace {

// A slice of the unweighted counterexample: sparse along x_1, as in the grid checks.
const GridFunction& slice_grid(int level) {
    static std::vector<std::unique_ptr<GridFunction>> cache(16);
    auto& g = cache[static_cast<std::size_t>(level)];
    if (!g) {
        auto spec = CounterexampleSpec::make(2, 0.5, 1.0, HUGE_VAL, AdmissibleFn::constant(1.0),
                                             construct_lambda(1.0, HUGE_VAL, 34));
        Box box = counterexample_slice_box(spec, 6);
        g = std::make_unique<GridFunction>(slice(spec, BumpFn(2), 1.37, box, level, 6).grid);
    }
    return *g;
}

// A dense 2-D grid.
const GridFunction& dense_grid(int level) {
    static std::vector<std::unique_ptr<GridFunction>> cache(16);
    auto& g = cache[static_cast<std::size_t>(level)];
    if (!g)
        g = std::make_unique<GridFunction>(GridFunction::sample(
            Box::cube(2, 0.0, 1.0), level, [](std::span<const double> x) { return std::sin(7.0 * x[0]) * std::abs(x[1] - 0.4); }));
    return *g;
}

template <class Kernel>
void run_shell(benchmark::State& state, const GridFunction& g, int dim, Kernel kernel) {
    auto shifts = shell_shifts(dim, g.level(), 1, true);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(g, shifts, 2, 1.0));
    state.counters["nodes"] = static_cast<double>(g.size());
    state.counters["shifts"] = static_cast<double>(shifts.size());
}

void BM_ShellSlice_Serial(benchmark::State& s) { run_shell(s, slice_grid(s.range(0)), 1, kernels::serial::shell_sup); }
void BM_ShellSlice_Omp(benchmark::State& s) { run_shell(s, slice_grid(s.range(0)), 1, kernels::omp::shell_sup); }
void BM_ShellDense_Serial(benchmark::State& s) { run_shell(s, dense_grid(s.range(0)), 2, kernels::serial::shell_sup); }
void BM_ShellDense_Omp(benchmark::State& s) { run_shell(s, dense_grid(s.range(0)), 2, kernels::omp::shell_sup); }

template <class Kernel>
void run_synth(benchmark::State& state, Kernel kernel) {
    auto spec = CounterexampleSpec::make(2, 0.5, 1.0, HUGE_VAL, AdmissibleFn::constant(1.0),
                                         construct_lambda(1.0, HUGE_VAL, 34));
    // range(0): deepest coefficient level; range(1): grid level.
    const int cap = static_cast<int>(state.range(0));
    QuarkCoeffs c = counterexample_coeffs(spec, cap);
    BumpFn bump(2);
    Box box{{-2.0, 0.0}, {static_cast<double>(spec.C_M * cap + 4), 3.0}};
    const int level = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(kernel(c, bump, spec.params(), box, level));
    state.counters["coeffs"] = static_cast<double>(c.size());
}

void BM_Synth_Serial(benchmark::State& s) { run_synth(s, kernels::serial::synthesize); }
void BM_Synth_Omp(benchmark::State& s) { run_synth(s, kernels::omp::synthesize); }

} // namespace

BENCHMARK(BM_ShellSlice_Serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShellSlice_Omp)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShellDense_Serial)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShellDense_Omp)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Synth_Serial)->Args({5, 6})->Args({9, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Synth_Omp)->Args({5, 6})->Args({9, 5})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
