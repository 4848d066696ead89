#include "aggts/aggregation.hpp"
#include "aggts/cross_basis.hpp"
#include "aggts/reference.hpp"
#include "aggts/regression.hpp"
#include "aggts/rng.hpp"
#include "aggts/synthdata.hpp"

#include <benchmark/benchmark.h>

// Parallel kernels against their serial reference implementations. Run with
// OMP_NUM_THREADS=1 to measure the parallel code path on a single core.
namespace {

using namespace aggts;

DailySeries bench_series(int n) {
    Rng rng(42);
    std::vector<double> values(static_cast<std::size_t>(n));
    for (auto& v : values) v = rng.normal();
    return DailySeries(make_date(2000, 1, 1), std::move(values));
}

void bm_aggregate_parallel(benchmark::State& state) {
    const DailySeries y = bench_series(static_cast<int>(state.range(0)));
    const WeightVector w = kernel_weights({KernelKind::Epanechnikov, 21, WindowMode::Future});
    for (auto _ : state) {
        const DailySeries out = aggregate(y, w);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(bm_aggregate_parallel)->Arg(10000)->Arg(100000);

void bm_aggregate_reference(benchmark::State& state) {
    const DailySeries y = bench_series(static_cast<int>(state.range(0)));
    const WeightVector w = kernel_weights({KernelKind::Epanechnikov, 21, WindowMode::Future});
    for (auto _ : state) {
        const DailySeries out = reference::aggregate(y, w);
        benchmark::DoNotOptimize(out.values.data());
    }
}
BENCHMARK(bm_aggregate_reference)->Arg(10000)->Arg(100000);

CrossBasisSpec bench_cb_spec(const DailySeries& x) {
    CrossBasisSpec spec;
    spec.max_lag = 21;
    spec.predictor.degree = 3;
    spec.predictor.boundary_low = -6.0;
    spec.predictor.boundary_high = 6.0;
    spec.predictor.interior_knots = {-1.0, 0.5, 1.5};
    spec.lag.degree = 3;
    spec.lag.boundary_low = 0.0;
    spec.lag.boundary_high = 21.0;
    spec.lag.interior_knots = lag_knots_log(21, 3);
    (void)x;
    return spec;
}

void bm_cross_basis_parallel(benchmark::State& state) {
    const DailySeries x = bench_series(static_cast<int>(state.range(0)));
    const CrossBasisSpec spec = bench_cb_spec(x);
    for (auto _ : state) {
        const DesignMatrix d = cross_basis(x, spec);
        benchmark::DoNotOptimize(d.X.data());
    }
}
BENCHMARK(bm_cross_basis_parallel)->Arg(2000)->Arg(10000);

void bm_cross_basis_reference(benchmark::State& state) {
    const DailySeries x = bench_series(static_cast<int>(state.range(0)));
    const CrossBasisSpec spec = bench_cb_spec(x);
    for (auto _ : state) {
        const DesignMatrix d = reference::cross_basis(x, spec);
        benchmark::DoNotOptimize(d.X.data());
    }
}
BENCHMARK(bm_cross_basis_reference)->Arg(2000)->Arg(10000);

void bm_gls_profile(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(7);
    Eigen::MatrixXd x(n, 20);
    Eigen::VectorXd y(n);
    for (int t = 0; t < n; ++t) {
        for (int j = 0; j < 20; ++j) x(t, j) = rng.normal();
        y(t) = x.row(t).sum() * 0.1 + rng.normal();
    }
    ArmaParams corr;
    corr.phi = {0.5};
    corr.theta = {0.2};
    for (auto _ : state) {
        const GlsProfile prof = gls_profile(x, y, corr);
        benchmark::DoNotOptimize(prof.loglik);
    }
}
BENCHMARK(bm_gls_profile)->Arg(2000)->Arg(8000);

} // namespace

BENCHMARK_MAIN();
