#include <benchmark/benchmark.h>

#include <gmq/fourier.hpp>
#include <gmq/harness.hpp>
#include <gmq/lattice.hpp>
#include <gmq/oracle.hpp>
#include <gmq/stencil.hpp>

namespace {

void BM_series_d1(benchmark::State& state) {
    gmq::RbfParams p{1.0, 1, 1};
    for (auto _ : state) benchmark::DoNotOptimize(gmq::phi_hat_series(p, 1.0));
}
BENCHMARK(BM_series_d1);

void BM_series_d3_n3(benchmark::State& state) {
    gmq::RbfParams p{1.0, 3, 3};
    for (auto _ : state) benchmark::DoNotOptimize(gmq::phi_hat_series(p, 1.0));
}
BENCHMARK(BM_series_d3_n3);

void BM_oracle_d1(benchmark::State& state) {
    gmq::RbfParams p{1.0, 1, 1};
    for (auto _ : state) benchmark::DoNotOptimize(gmq::phi_hat_oracle(p, 1.0, 1e-7));
}
BENCHMARK(BM_oracle_d1);

void BM_build_stencil_d3(benchmark::State& state) {
    gmq::RbfParams p{1.0, 3, 1};
    for (auto _ : state) benchmark::DoNotOptimize(gmq::build_stencil(p, 4));
}
BENCHMARK(BM_build_stencil_d3);

void BM_build_stencil_3d(benchmark::State& state) {
    gmq::RbfParams p{1.0, 1, 3};
    for (auto _ : state) benchmark::DoNotOptimize(gmq::build_stencil(p, 2));
}
BENCHMARK(BM_build_stencil_3d);

void BM_psi_near(benchmark::State& state) {
    auto st = gmq::build_stencil({1.0, 3, 1}, 4);
    gmq::PsiEvaluator psi(st);
    for (auto _ : state) benchmark::DoNotOptimize(psi.eval_dd(5.0));
}
BENCHMARK(BM_psi_near);

void BM_psi_far(benchmark::State& state) {
    auto st = gmq::build_stencil({1.0, 3, 1}, 4);
    gmq::PsiEvaluator psi(st);
    for (auto _ : state) benchmark::DoNotOptimize(psi.eval_dd(1000.0));
}
BENCHMARK(BM_psi_far);

void BM_quasi_interp_point(benchmark::State& state) {
    auto st = gmq::build_stencil({1.0, 1, 1}, 1);
    gmq::LatticeSumSettings s;
    s.R = state.range(0);
    s.tail_tolerance = 1.0;
    auto f = [](const std::array<double, 3>& x) { return 1.0 / (1.0 + x[0] * x[0]); };
    for (auto _ : state)
        benchmark::DoNotOptimize(gmq::quasi_interp(st, f, 0.5, {0.37, 0.0, 0.0}, s));
}
BENCHMARK(BM_quasi_interp_point)->Arg(500)->Arg(2000)->Arg(8000);

void BM_flatness(benchmark::State& state) {
    auto st = gmq::build_stencil({1.0, 3, 1}, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(gmq::flatness_order(st, {0, 0, 0}, 0.01, 0.1));
}
BENCHMARK(BM_flatness);

} // namespace

BENCHMARK_MAIN();
