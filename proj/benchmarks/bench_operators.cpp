#include <cmath>

#include <benchmark/benchmark.h>

#include "mgraph/geometry.hpp"
#include "mgraph/grid.hpp"
#include "mgraph/harmonic.hpp"
#include "mgraph/msolver.hpp"

namespace {

using namespace mgraph;

double spacing(const benchmark::State& state) { return 1.0 / static_cast<double>(state.range(0)); }

ScalarField smooth_field(double h)
{
    return ScalarField::sample(make_disk_grid(h), [](Point2 p) { return std::sin(3 * p.x + 1) * std::cos(2 * p.y); });
}

void BM_GridConstruction(benchmark::State& state)
{
    const double h = spacing(state);
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_disk_grid(h));
    }
}
BENCHMARK(BM_GridConstruction)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Gradient(benchmark::State& state)
{
    const auto f = smooth_field(spacing(state));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gradient(f));
    }
    state.counters["nodes"] = static_cast<double>(f.size());
}
BENCHMARK(BM_Gradient)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Hessian(benchmark::State& state)
{
    const auto f = smooth_field(spacing(state));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hessian(f));
    }
}
BENCHMARK(BM_Hessian)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_Nonlinearity(benchmark::State& state)
{
    const auto f = smooth_field(spacing(state));
    for (auto _ : state) {
        benchmark::DoNotOptimize(nonlinearity_F(f));
    }
}
BENCHMARK(BM_Nonlinearity)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_MarchingSquares(benchmark::State& state)
{
    const auto u = sample(StripeSinCosh{10.0}, make_disk_grid(spacing(state)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_zero_set(u));
    }
}
BENCHMARK(BM_MarchingSquares)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_GraphArea(benchmark::State& state)
{
    const auto f = smooth_field(spacing(state));
    for (auto _ : state) {
        benchmark::DoNotOptimize(graph_area(f));
    }
}
BENCHMARK(BM_GraphArea)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
