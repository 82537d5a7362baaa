#pragma once

// Holomorphic Euler characteristics of twisted forms on P^n and on smooth
// degree-d hypersurfaces X in P^n, and the Hodge diamond of X recovered from
// them. Everything here is exact integer arithmetic.
//
// Smoothness of X is assumed and never checked.

#include <conifold/exact.hpp>

#include <vector>

namespace conifold::hodge {

struct HypersurfaceSpec {
    int n;  // ambient projective dimension, n >= 2
    int d;  // degree, d >= 1

    HypersurfaceSpec(int ambient_dim, int degree);

    int dim() const noexcept { return n - 1; }
    bool calabi_yau() const noexcept { return d == n + 1; }
};

// h[p][q] for 0 <= p, q <= dim.
struct HodgeDiamond {
    int dim = 0;
    std::vector<std::vector<BigInt>> h;

    const BigInt& operator()(int p, int q) const { return h.at(p).at(q); }
};

// chi(O_{P^n}(m)) = prod_{i=1..n} (m + i) / n!, valid for every integer m.
BigInt chi_line_bundle(int n, long m);

// chi(Omega^p_{P^n}(-r)) through the wedged Euler sequence:
//   chi(Omega^p(-r)) = C(n+1, p) chi(O(-p-r)) - chi(Omega^{p-1}(-r)).
BigInt chi_omega_p_twist(int n, int p, long r);

// chi(Omega^p_X(-r)) through the conormal and restriction sequences:
//   chi(Omega^p_X(-r)) = chi(Omega^p_P(-r)) - chi(Omega^p_P(-r-d))
//                        - chi(Omega^{p-1}_X(-r-d)).
BigInt chi_hypersurface_omega_p(const HypersurfaceSpec& spec, int p, long r);

// Requires n >= 3 so that the Lefschetz range covers every off-middle entry.
HodgeDiamond hodge_diamond(const HypersurfaceSpec& spec);

// C(n+d, d) - 1 - ((n+1)^2 - 1): coefficients modulo scaling and PGL(n+1).
BigInt moduli_dimension(int n, int d);
inline BigInt quintic_moduli_dimension() { return moduli_dimension(4, 5); }
inline BigInt quartic_k3_moduli_dimension() { return moduli_dimension(3, 4); }

}  // namespace conifold::hodge
