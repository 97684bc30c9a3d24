#include <cmath>

#include <benchmark/benchmark.h>

#include "mgraph/harmonic.hpp"
#include "mgraph/msolver.hpp"
#include "mgraph/poisson.hpp"

namespace {

using namespace mgraph;

double spacing(const benchmark::State& state) { return 1.0 / static_cast<double>(state.range(0)); }

void BM_LaplaceAssembly(benchmark::State& state)
{
    const auto grid = make_disk_grid(spacing(state));
    for (auto _ : state) {
        benchmark::DoNotOptimize(LaplaceOperator(grid));
    }
}
BENCHMARK(BM_LaplaceAssembly)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

// One Dirichlet solve on a prebuilt operator.
void BM_PoissonSolve(benchmark::State& state)
{
    const auto grid = make_disk_grid(spacing(state));
    const LaplaceOperator op(grid);
    const auto rhs = ScalarField::sample(grid, [](Point2 p) { return std::exp(p.x) * std::cos(3 * p.y); });
    const std::vector<double> trace(grid->cut_arms().size(), 0.0);
    for (auto _ : state) {
        auto [w, stats] = op.solve(rhs, trace, 1e-10);
        benchmark::DoNotOptimize(w);
        state.counters["iterations"] = stats.iterations;
    }
    state.counters["unknowns"] = static_cast<double>(op.unknowns());
}
BENCHMARK(BM_PoissonSolve)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Picard(benchmark::State& state)
{
    const auto grid = make_disk_grid(spacing(state));
    const auto v = sample(StripeSinCosh{10.0}, grid);
    const LaplaceOperator op(grid);
    PicardConfig cfg;
    for (auto _ : state) {
        auto r = picard_solve(v, cfg, op);
        benchmark::DoNotOptimize(r.u);
        state.counters["iterations"] = static_cast<double>(r.report.iterations.size());
    }
}
BENCHMARK(BM_Picard)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_CauchyFit(benchmark::State& state)
{
    const CurveSpec arc = builtin_curve("circle-arc");
    const int degree = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_cauchy_data(arc, degree));
    }
}
BENCHMARK(BM_CauchyFit)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace
