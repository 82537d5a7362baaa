#include <conifold/error.hpp>
#include <conifold/transitions.hpp>

#include <conifold_lab/checks.hpp>
#include <conifold_oracles/oracles.hpp>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include <random>

using namespace conifold;
using namespace conifold::transitions;

namespace {

std::string equation_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const TransitionError& e) {
        return e.equation();
    }
    return "";
}

}  // namespace

TEST(Topology, EulerAndBetti) {
    const Betti q = betti_from_hodge({1, 101});
    EXPECT_EQ(q, (Betti{0, 1, 204}));
    EXPECT_EQ(euler_characteristic(q), -200);
    EXPECT_EQ(euler_characteristic(betti_from_hodge({101, 1})), 200);
}

TEST(Topology, ApplyAndRevertAreInverse) {
    const HodgePair h{7, 40};
    const Betti b = betti_from_hodge(h);
    for (long k = 0; k <= 7; ++k) {
        for (long c = 0; c <= 12; ++c) {
            const long N = k + c;
            if (N == 0) continue;
            const TransitionRecord r = apply_topology_change(h, b, N, k, c);
            EXPECT_EQ(r.hodge_after, (HodgePair{7 - k, 40 + c}));
            EXPECT_EQ(r.betti_after, (Betti{0, 7 - k, b.b3 + 2 * c}));
            EXPECT_EQ(euler_characteristic(r.betti_before) - euler_characteristic(r.betti_after), 2 * N);
            const TransitionRecord back = revert_topology_change(r.hodge_after, r.betti_after, N, k, c);
            EXPECT_EQ(back.hodge_before, h);
            EXPECT_EQ(back.betti_before, b);
            const Counts counts = infer_counts(h, r.hodge_after, N);
            EXPECT_EQ(counts.k, k);
            EXPECT_EQ(counts.c, c);
        }
    }
}

TEST(Topology, ViolationsNameTheirEquation) {
    const HodgePair h{1, 101};
    const Betti b = betti_from_hodge(h);
    EXPECT_EQ(equation_of([&] { apply_topology_change(h, b, 2, 1, 0); }), "N = k + c");
    EXPECT_EQ(equation_of([&] { apply_topology_change(h, b, 2, 2, 0); }), "h11(X_t) = h11(Xhat) - k");
    EXPECT_EQ(equation_of([&] { apply_topology_change(h, b, 1, -1, 2); }), "k >= 0");
    EXPECT_EQ(equation_of([&] { revert_topology_change(h, b, 200, 0, 200); }), "h21(Xhat) = h21(X_t) - c");
    EXPECT_EQ(equation_of([&] { infer_counts(h, {2, 101}, 1); }), "k = h11(Xhat) - h11(X_t) >= 0");
    EXPECT_EQ(equation_of([&] { infer_counts(h, {1, 100}, 1); }), "c = h21(X_t) - h21(Xhat) >= 0");
    EXPECT_EQ(equation_of([&] { infer_counts({2, 86}, {1, 101}, 15); }), "N = k + c");
}

TEST(Topology, CatalogRoundTrips) {
    const auto catalog = example_catalog();
    ASSERT_EQ(catalog.size(), 4u);
    for (const auto& r : catalog) {
        const auto again = apply_topology_change(r.hodge_before, r.betti_before, r.N, r.k, r.c);
        EXPECT_EQ(again.hodge_after, r.hodge_after) << r.name;
        EXPECT_EQ(again.betti_after, r.betti_after) << r.name;
        const Counts c = infer_counts(r.hodge_before, r.hodge_after, r.N);
        EXPECT_EQ(c.k, r.k);
        EXPECT_EQ(c.c, r.c);
    }
}

TEST(Friedman, TianYauHasAllNonzeroWitness) {
    const auto rows = lab::tian_yau_classes();
    const auto res = friedman_witness(rows);
    ASSERT_TRUE(res.feasible);
    ClassMatrix gm;
    for (const auto& r : rows) gm.emplace_back(r.begin(), r.end());
    EXPECT_TRUE(verify_witness(gm, res.lambda));
    for (const auto& l : res.lambda) EXPECT_FALSE(l.is_zero());
}

TEST(Friedman, InfeasibleCases) {
    EXPECT_FALSE(friedman_witness(RationalClassMatrix{{Rational(3), Rational(0)}}).feasible);
    EXPECT_FALSE(friedman_witness(RationalClassMatrix{{1, 0}, {0, 1}}).feasible);
    // The third class is independent of the first two, which cancel.
    EXPECT_FALSE(friedman_witness(RationalClassMatrix{{1, 0}, {-1, 0}, {0, 1}}).feasible);
    EXPECT_TRUE(friedman_witness(RationalClassMatrix{{1, 0}, {-1, 0}}).feasible);
    EXPECT_TRUE(friedman_witness(RationalClassMatrix{{0}}).feasible);
}

TEST(Friedman, GaussianEntries) {
    const GaussianRational i(Rational(0), Rational(1));
    const ClassMatrix m = {{GaussianRational(Rational(1)), i}, {i, GaussianRational(Rational(-1))},
                           {GaussianRational(Rational(1, 2)), GaussianRational(Rational(0), Rational(1, 2))}};
    const auto res = friedman_witness(m);
    ASSERT_TRUE(res.feasible);
    EXPECT_TRUE(verify_witness(m, res.lambda));
    EXPECT_FALSE(verify_witness(m, {GaussianRational(Rational(1)), GaussianRational(Rational(0)),
                                    GaussianRational(Rational(0))}));
    EXPECT_EQ(to_string(GaussianRational(Rational(1, 2), Rational(-3))), "1/2-3i");
}

TEST(Friedman, AgreesWithRankOracle) {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> entry(-2, 2), size(1, 5);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = size(rng), m = size(rng);
        oracles::IntMatrix im(n, std::vector<std::int64_t>(m));
        RationalClassMatrix rm(n, std::vector<Rational>(m));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) rm[i][j] = im[i][j] = entry(rng);
        }
        const auto res = friedman_witness(rm);
        EXPECT_EQ(res.feasible, oracles::friedman_feasible_bruteforce(im));
        if (res.feasible) {
            ClassMatrix gm;
            for (const auto& r : rm) gm.emplace_back(r.begin(), r.end());
            EXPECT_TRUE(verify_witness(gm, res.lambda));
        }
    }
}

TEST(Friedman, BruteForceAuditSmall) {
    const auto audit = lab::friedman_bruteforce_audit(3, 2);
    EXPECT_GT(audit.cases, 0);
    EXPECT_EQ(audit.disagreements, 0);
    EXPECT_EQ(audit.unsound, 0);
}

TEST(Bareiss, MatchesEigenRank) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> entry(-3, 3), size(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = size(rng), m = size(rng);
        oracles::IntMatrix im(n, std::vector<std::int64_t>(m));
        Eigen::MatrixXd dm(n, m);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < m; ++j) dm(i, j) = static_cast<double>(im[i][j] = entry(rng));
        }
        EXPECT_EQ(oracles::bareiss_rank(im), Eigen::FullPivLU<Eigen::MatrixXd>(dm).rank());
    }
}

TEST(Dwork, SingularPoints) {
    EXPECT_EQ(dwork_raw_tuples().size(), 625u);
    const auto pts = dwork_singular_points();
    ASSERT_EQ(pts.size(), 125u);
    EXPECT_NE(std::find(pts.begin(), pts.end(), ProjectivePoint5{{0, 0, 0, 0, 0}}), pts.end());
    const poly::Polynomial4 P = poly::dwork_affine();
    for (const auto& p : pts) {
        EXPECT_EQ(p.a[0], 0);
        EXPECT_EQ((p.a[1] + p.a[2] + p.a[3] + p.a[4]) % 5, 0);
        const DworkCheck c = dwork_check(p);
        EXPECT_LT(c.value_abs, 1e-10);
        EXPECT_LT(c.gradient_max, 1e-10);
        const OdpDiagnostics d = verify_odp(P, affine_point(p));
        EXPECT_TRUE(d.is_odp);
        EXPECT_EQ(d.status, OdpStatus::nondegenerate);
    }
}

TEST(Dwork, ExactCertificates) {
    for (const auto& p : dwork_singular_points()) {
        const ExactOdpCheck e = exact_odp_check(p);
        EXPECT_TRUE(e.value_zero && e.gradient_zero && e.hessian_nonzero);
    }
}

TEST(Dwork, RandomPointsAreSmooth) {
    const poly::Polynomial4 P = poly::dwork_affine();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const poly::Vec4c z = random_dwork_point(seed);
        const OdpDiagnostics d = verify_odp(P, z);
        EXPECT_EQ(d.status, OdpStatus::not_singular);
        EXPECT_GT(d.gradient_norm, 1e-3);
    }
}

TEST(Cyclotomic, Arithmetic) {
    const Cyclotomic5 x = Cyclotomic5::power(1);
    EXPECT_TRUE((x * x * x * x * x - Cyclotomic5::integer(1)).is_zero_in_field());
    Cyclotomic5 sum = Cyclotomic5::integer(0);
    for (int e = 0; e < 5; ++e) sum = sum + Cyclotomic5::power(e);
    EXPECT_TRUE(sum.is_zero_in_field());
    EXPECT_FALSE((x - Cyclotomic5::integer(1)).is_zero_in_field());
}

TEST(Odp, Examples) {
    const poly::Polynomial4 q = poly::conifold_quadric();
    EXPECT_EQ(verify_odp(q, poly::Vec4c::Zero()).status, OdpStatus::nondegenerate);
    poly::Polynomial4 cusp;
    cusp.add(1.0, {2, 0, 0, 0}).add(1.0, {0, 2, 0, 0}).add(1.0, {0, 0, 2, 0}).add(1.0, {0, 0, 0, 3});
    EXPECT_EQ(verify_odp(cusp, poly::Vec4c::Zero()).status, OdpStatus::degenerate);
    EXPECT_FALSE(verify_odp(cusp, poly::Vec4c::Zero()).is_odp);
    const poly::Vec4c smooth(1.0, poly::cplx(0.0, 1.0), 0.0, 0.0);
    EXPECT_EQ(verify_odp(q, smooth).status, OdpStatus::not_singular);
    EXPECT_THROW(verify_odp(q, poly::Vec4c(1.0, 0.0, 0.0, 0.0)), NotOnVarietyError);
}
