#include <conifold/error.hpp>
#include <conifold/parallel.hpp>
#include <conifold/quadrature.hpp>

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace conifold;

TEST(Quadrature, KnownIntegrals) {
    EXPECT_NEAR(quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value, 2.0, 1e-12);
    EXPECT_NEAR(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value, 2.0, 1e-9);
    EXPECT_NEAR(quad::integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0).value,
                std::sqrt(std::numbers::pi), 1e-12);
}

TEST(Quadrature, TighterToleranceIsMoreAccurate) {
    auto f = [](double x) { return std::cbrt(x) * std::cos(3.0 * x); };
    quad::Options loose, tight;
    loose.abs_tol = loose.rel_tol = 1e-6;
    tight.abs_tol = tight.rel_tol = 1e-12;
    const auto a = quad::integrate(f, 0.0, 4.0, loose);
    const auto b = quad::integrate(f, 0.0, 4.0, tight);
    EXPECT_NEAR(a.value, b.value, 1e-5);
    EXPECT_GE(b.intervals, a.intervals);
    EXPECT_LE(b.error, 1e-11);
}

TEST(Quadrature, BudgetExhaustionThrows) {
    quad::Options o;
    o.max_intervals = 30;
    EXPECT_THROW(quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, o), ConvergenceError);
}

TEST(Parallel, CoversEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
    EXPECT_GE(worker_count(), 1u);
}

TEST(Parallel, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                     if (i == 57) throw std::runtime_error("boom");
                 }),
                 std::runtime_error);
}

TEST(Parallel, PairwiseSumIsAccurate) {
    std::vector<double> xs(1 << 16, 0.1);
    EXPECT_NEAR(pairwise_sum(xs), 0.1 * xs.size(), 1e-9);
    std::vector<std::complex<double>> zs(10, {1.0, -2.0});
    EXPECT_EQ(pairwise_sum(zs), std::complex<double>(10.0, -20.0));
}
