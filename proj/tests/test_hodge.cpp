#include <conifold/error.hpp>
#include <conifold/hodge_euler.hpp>

#include <conifold_oracles/oracles.hpp>

#include <gtest/gtest.h>

using namespace conifold;
using namespace conifold::hodge;

namespace {

BigInt topological_euler(int n, int d) {
    // ((1 - d)^{n+1} - 1) / d + n + 1, the Euler number of a degree-d hypersurface in P^n.
    BigInt p = 1;
    for (int i = 0; i <= n; ++i) p *= 1 - d;
    return (p - 1) / d + n + 1;
}

}  // namespace

TEST(ChiLineBundle, MatchesProductOracle) {
    for (int n = 1; n <= 7; ++n) {
        for (long m = -25; m <= 25; ++m) {
            const long double ref = oracles::chi_line_bundle_product(n, m);
            EXPECT_EQ(chi_line_bundle(n, m), BigInt(static_cast<long>(ref))) << "n=" << n << " m=" << m;
        }
    }
}

TEST(ChiLineBundle, IsPolynomialOfDegreeN) {
    for (int n = 1; n <= 6; ++n) {
        for (long m = -15; m <= 10; ++m) {
            BigInt top = 0, nth = 0;
            for (int k = 0; k <= n + 1; ++k) {
                const BigInt c = binomial_poly(BigInt(n + 1), k);
                top += (k % 2 ? -1 : 1) * c * chi_line_bundle(n, m + k);
            }
            for (int k = 0; k <= n; ++k) {
                const BigInt c = binomial_poly(BigInt(n), k);
                nth += ((n - k) % 2 ? -1 : 1) * c * chi_line_bundle(n, m + k);
            }
            EXPECT_EQ(top, 0);
            EXPECT_EQ(nth, 1);
        }
    }
}

TEST(ChiLineBundle, SerreDualityOnProjectiveSpace) {
    for (int n = 1; n <= 6; ++n) {
        for (long m = -10; m <= 10; ++m) {
            const int sign = n % 2 ? -1 : 1;
            EXPECT_EQ(chi_line_bundle(n, m), sign * chi_line_bundle(n, -m - n - 1));
        }
    }
}

TEST(BinomialPoly, NegativeArguments) {
    EXPECT_EQ(binomial_poly(BigInt(-1), 3), -1);
    EXPECT_EQ(binomial_poly(BigInt(-3), 2), 6);
    EXPECT_EQ(binomial_poly(BigInt(2), 5), 0);
    EXPECT_THROW(binomial_poly(BigInt(3), -1), DomainError);
}

TEST(ChiOmegaP, ProjectiveSpaceHodgeNumbers) {
    // chi(Omega^p_{P^n}) = (-1)^p since h^{p,p} = 1 is the only entry.
    for (int n = 1; n <= 7; ++n) {
        for (int p = 0; p <= n; ++p) EXPECT_EQ(chi_omega_p_twist(n, p, 0), p % 2 ? -1 : 1);
    }
}

TEST(HodgeDiamond, Quintic) {
    const HodgeDiamond hd = hodge_diamond(HypersurfaceSpec(4, 5));
    ASSERT_EQ(hd.dim, 3);
    EXPECT_EQ(hd(1, 1), 1);
    EXPECT_EQ(hd(2, 1), 101);
    EXPECT_EQ(hd(1, 2), 101);
    EXPECT_EQ(hd(3, 0), 1);
    EXPECT_EQ(hd(1, 0), 0);
    EXPECT_EQ(chi_hypersurface_omega_p(HypersurfaceSpec(4, 5), 1, 0), 100);
}

TEST(HodgeDiamond, SurfacesInP3) {
    EXPECT_EQ(hodge_diamond(HypersurfaceSpec(3, 4))(1, 1), 20);
    EXPECT_EQ(hodge_diamond(HypersurfaceSpec(3, 4))(2, 0), 1);
    EXPECT_EQ(hodge_diamond(HypersurfaceSpec(3, 3))(1, 1), 7);
    EXPECT_EQ(hodge_diamond(HypersurfaceSpec(3, 2))(1, 1), 2);
    EXPECT_EQ(hodge_diamond(HypersurfaceSpec(3, 1))(1, 1), 1);
    EXPECT_EQ(hodge_diamond(HypersurfaceSpec(3, 5))(2, 0), 4);
}

TEST(HodgeDiamond, InvariantsAcrossDimensions) {
    for (int n = 3; n <= 8; ++n) {
        for (int d = 1; d <= 7; ++d) {
            const HodgeDiamond hd = hodge_diamond(HypersurfaceSpec(n, d));
            const int m = hd.dim;
            BigInt euler = 0;
            for (int p = 0; p <= m; ++p) {
                for (int q = 0; q <= m; ++q) {
                    EXPECT_EQ(hd(p, q), hd(q, p));
                    EXPECT_EQ(hd(p, q), hd(m - p, m - q));
                    EXPECT_GE(sgn(hd(p, q)), 0);
                    if (p + q != m) EXPECT_EQ(hd(p, q), p == q ? 1 : 0) << n << " " << d;
                    euler += ((p + q) % 2 ? -1 : 1) * hd(p, q);
                }
            }
            EXPECT_EQ(euler, topological_euler(n, d)) << "n=" << n << " d=" << d;
        }
    }
}

TEST(HodgeDiamond, ClosedFormForOneForms) {
    for (int n = 3; n <= 8; ++n) {
        const int sign = n % 2 ? -1 : 1;
        for (int d = 1; d <= 8; ++d) {
            const BigInt closed = BigInt(-1) - sign * (n + 1) * binomial_poly(BigInt(d), n) +
                                  sign * binomial_poly(BigInt(2 * d - 1), n);
            EXPECT_EQ(chi_hypersurface_omega_p(HypersurfaceSpec(n, d), 1, 0), closed);
        }
    }
}

TEST(HodgeDiamond, CalabiYauMiddleRowsForSextic) {
    const HodgeDiamond hd = hodge_diamond(HypersurfaceSpec(5, 6));
    EXPECT_EQ(hd(1, 1), 1);
    EXPECT_EQ(hd(3, 1), 426);
    EXPECT_EQ(hd(2, 2), 1752);
}

TEST(HodgeDiamond, RejectsBadInput) {
    EXPECT_THROW(HypersurfaceSpec(1, 3), DomainError);
    EXPECT_THROW(HypersurfaceSpec(4, 0), DomainError);
    EXPECT_THROW(hodge_diamond(HypersurfaceSpec(2, 3)), DomainError);
    EXPECT_THROW(chi_hypersurface_omega_p(HypersurfaceSpec(4, 5), 4, 0), DomainError);
}

TEST(Moduli, Counts) {
    EXPECT_EQ(quintic_moduli_dimension(), 101);
    EXPECT_EQ(quartic_k3_moduli_dimension(), 19);
    EXPECT_EQ(moduli_dimension(2, 3), 1);
}
