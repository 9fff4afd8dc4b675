#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdint>

#include "minding/complex_expr.hpp"
#include "minding/conformal_core.hpp"
#include "minding/contour_integral.hpp"
#include "minding/geometry_check.hpp"
#include "minding/subset_metrics.hpp"
#include "minding/verification.hpp"

using namespace minding;

namespace {

const char* const kSource = "sin(z)/2 + exp(z^2)/3 - i*z^3";

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(parse(kSource));
}
BENCHMARK(BM_Parse);

void BM_Evaluate(benchmark::State& state) {
    const Expr f = parse(kSource);
    Complex z{0.1, 0.2};
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.evaluate(z));
        z += Complex{1e-9, 0.0};
    }
}
BENCHMARK(BM_Evaluate);

void BM_Derivative(benchmark::State& state) {
    const Expr f = parse(kSource);
    for (auto _ : state) benchmark::DoNotOptimize(f.derivative());
}
BENCHMARK(BM_Derivative);

void BM_IntegrateExpF(benchmark::State& state) {
    const Expr f = parse(kSource);
    const Complex to{0.3 * static_cast<double>(state.range(0)), 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(integrate_exp_f(f, {0.0, 0.0}, to));
}
BENCHMARK(BM_IntegrateExpF)->Arg(1)->Arg(2)->Arg(4);

void BM_ConstructIsometry(benchmark::State& state) {
    const Expr f = parse("z^2/4");
    for (auto _ : state) benchmark::DoNotOptimize(construct_isometry(f, ConstructionConfig{}));
}
BENCHMARK(BM_ConstructIsometry)->Unit(benchmark::kMillisecond);

void BM_PullbackSweep(benchmark::State& state) {
    const ConstructionResult r = construct_isometry(parse("sin(z)/2"), ConstructionConfig{});
    const auto n = static_cast<int>(state.range(0));
    const Grid2D grid = domain_grid(r.domain(), n, n, 1e-4);
    const ScalarField phi = [&r](Point2 p) { return r.conformal_exponent(p); };
    for (auto _ : state) benchmark::DoNotOptimize(pullback_residual(r, phi, grid, 1e-4, 1e-5));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid.size()));
}
BENCHMARK(BM_PullbackSweep)->Arg(11)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_VerifyConstruction(benchmark::State& state) {
    const ConstructionResult r = construct_isometry(parse("z^2/4"), ConstructionConfig{});
    const VerifyOptions options;
    const double margin =
        std::max(resolved_fd_step(options, r.domain()), resolved_laplacian_step(options, r.domain()));
    const Grid2D grid = domain_grid(r.domain(), 21, 21, margin);
    for (auto _ : state) benchmark::DoNotOptimize(verify_construction(r, grid, options));
}
BENCHMARK(BM_VerifyConstruction)->Unit(benchmark::kMillisecond);

void BM_GaussianSides(benchmark::State& state) {
    const ProductMetricSpec spec = gaussian_product_metric();
    for (auto _ : state) benchmark::DoNotOptimize(image_side_lengths(spec));
}
BENCHMARK(BM_GaussianSides);

}  // namespace

BENCHMARK_MAIN();
