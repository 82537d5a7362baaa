#include <conifold/hodge_euler.hpp>

#include <conifold/error.hpp>

#include <string>

namespace conifold::hodge {

HypersurfaceSpec::HypersurfaceSpec(int ambient_dim, int degree) : n(ambient_dim), d(degree) {
    if (n < 2) {
        throw DomainError("HypersurfaceSpec: ambient dimension must be >= 2, got " +
                          std::to_string(n));
    }
    if (d < 1) {
        throw DomainError("HypersurfaceSpec: degree must be >= 1, got " + std::to_string(d));
    }
}

BigInt chi_line_bundle(int n, long m) {
    if (n < 1) {
        throw DomainError("chi_line_bundle: n must be >= 1");
    }
    // prod_{i=1..n}(m+i)/n! = C(m+n, n) as a polynomial in m.
    return binomial_poly(BigInt(m) + n, n);
}

BigInt chi_omega_p_twist(int n, int p, long r) {
    if (p < 0 || p > n) {
        throw DomainError("chi_omega_p_twist: need 0 <= p <= n, got p=" + std::to_string(p));
    }
    if (r < 0) {
        throw DomainError("chi_omega_p_twist: twist r must be >= 0");
    }
    BigInt chi = chi_line_bundle(n, -r);
    for (int q = 1; q <= p; ++q) {
        chi = binomial_poly(BigInt(n + 1), q) * chi_line_bundle(n, -static_cast<long>(q) - r) - chi;
    }
    return chi;
}

BigInt chi_hypersurface_omega_p(const HypersurfaceSpec& spec, int p, long r) {
    if (p < 0 || p > spec.n - 1) {
        throw DomainError("chi_hypersurface_omega_p: need 0 <= p <= n-1, got p=" +
                          std::to_string(p));
    }
    if (r < 0) {
        throw DomainError("chi_hypersurface_omega_p: twist r must be >= 0");
    }
    const int n = spec.n;
    const long d = spec.d;
    if (p == 0) {
        return chi_line_bundle(n, -r) - chi_line_bundle(n, -r - d);
    }
    BigInt restricted = chi_omega_p_twist(n, p, r) - chi_omega_p_twist(n, p, r + d);
    return restricted - chi_hypersurface_omega_p(spec, p - 1, r + d);
}

HodgeDiamond hodge_diamond(const HypersurfaceSpec& spec) {
    if (spec.n < 3) {
        throw DomainError("hodge_diamond: requires n >= 3");
    }
    const int m = spec.dim();
    HodgeDiamond out;
    out.dim = m;
    out.h.assign(m + 1, std::vector<BigInt>(m + 1, BigInt(0)));
    for (int p = 0; p <= m; ++p) {
        for (int q = 0; q <= m; ++q) {
            if (p + q != m) {
                out.h[p][q] = (p == q) ? 1 : 0;
            }
        }
    }
    for (int p = 0; p <= m; ++p) {
        const int q = m - p;
        const BigInt chi = chi_hypersurface_omega_p(spec, p, 0);
        const int sign_p = (p % 2 == 0) ? 1 : -1;
        const int sign_q = (q % 2 == 0) ? 1 : -1;
        if (p == q) {
            // chi = (-1)^p h^{p,p}: the diagonal one is part of h^{p,p} itself.
            out.h[p][p] = sign_p * chi;
        } else {
            out.h[p][q] = sign_q * (chi - sign_p);
        }
    }
    return out;
}

BigInt moduli_dimension(int n, int d) {
    if (n < 1 || d < 1) {
        throw DomainError("moduli_dimension: need n >= 1 and d >= 1");
    }
    const BigInt coefficients = binomial_poly(BigInt(n + d), d);
    const BigInt pgl = BigInt(n + 1) * (n + 1) - 1;
    return coefficients - 1 - pgl;
}

}  // namespace conifold::hodge
