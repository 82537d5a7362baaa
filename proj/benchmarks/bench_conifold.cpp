#include <conifold/cdlo_metrics.hpp>
#include <conifold/hodge_euler.hpp>
#include <conifold/slag.hpp>
#include <conifold/transitions.hpp>

#include <benchmark/benchmark.h>

using namespace conifold;

static void BM_HodgeDiamond(benchmark::State& state) {
    const hodge::HypersurfaceSpec spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)) + 1);
    for (auto _ : state) benchmark::DoNotOptimize(hodge::hodge_diamond(spec));
}
BENCHMARK(BM_HodgeDiamond)->DenseRange(4, 8, 2);

static void BM_GammaResolved(benchmark::State& state) {
    double tau = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::gamma_resolved(tau));
        tau = tau > 1e6 ? 1e-3 : tau * 1.37;
    }
}
BENCHMARK(BM_GammaResolved);

static void BM_PotentialValue(benchmark::State& state) {
    const auto fam = state.range(0) == 0 ? metrics::PotentialFamily::smoothed(1.0)
                                         : metrics::PotentialFamily::resolved(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(metrics::potential_value(fam, 37.0));
}
BENCHMARK(BM_PotentialValue)->Arg(0)->Arg(1);

static void BM_MongeAmpereResidual(benchmark::State& state) {
    const auto fam = metrics::PotentialFamily::smoothed({0.5, 0.5});
    const double cal = metrics::calibrate_ma(fam);
    const auto p = metrics::sample_fiber_point(fam, 4.0, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::monge_ampere_residual(metrics::hermitian_hessian(fam, p), cal));
    }
}
BENCHMARK(BM_MongeAmpereResidual);

static void BM_ConvergenceSup(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::potential_convergence_sup(
            metrics::Kind::resolved, {1.0, 0.5, 0.25, 0.125, 1e-3}, 1.0, 10.0, 200));
    }
}
BENCHMARK(BM_ConvergenceSup)->Unit(benchmark::kMillisecond);

static void BM_VanishingCycle(benchmark::State& state) {
    const int res = static_cast<int>(state.range(0));
    for (auto _ : state) {
        const auto grid = slag::sample_vanishing_cycle({0.0, 1.0}, res);
        benchmark::DoNotOptimize(slag::integrate_volume_form(grid));
    }
}
BENCHMARK(BM_VanishingCycle)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_FriedmanTianYau(benchmark::State& state) {
    transitions::RationalClassMatrix m;
    for (int i = 0; i < 14; ++i) {
        std::vector<Rational> row(14, Rational(0));
        row[i] = 1;
        m.push_back(row);
    }
    m.push_back(std::vector<Rational>(14, Rational(-1)));
    for (auto _ : state) benchmark::DoNotOptimize(transitions::friedman_witness(m));
}
BENCHMARK(BM_FriedmanTianYau)->Unit(benchmark::kMicrosecond);

static void BM_DworkExact(benchmark::State& state) {
    const auto pts = transitions::dwork_singular_points();
    for (auto _ : state) {
        for (const auto& p : pts) benchmark::DoNotOptimize(transitions::exact_odp_check(p));
    }
}
BENCHMARK(BM_DworkExact)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
