#include <conifold/transitions.hpp>

#include <conifold/error.hpp>
#include <conifold/parallel.hpp>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace conifold::transitions {

long euler_characteristic(const Betti& b) { return 2 - 2 * b.b1 + 2 * b.b2 - b.b3; }

Betti betti_from_hodge(const HodgePair& h) { return Betti{0, h.h11, 2 + 2 * h.h21}; }

namespace {

void require(bool ok, const std::string& equation, const std::string& what) {
    if (!ok) throw TransitionError(equation, what);
}

void check_counts(long N, long k, long c) {
    require(k >= 0, "k >= 0", "rank k of the curve classes must be non-negative");
    require(c >= 0, "c >= 0", "rank c of the vanishing cycles must be non-negative");
    require(N == k + c, "N = k + c",
            "N = " + std::to_string(N) + " but k + c = " + std::to_string(k + c));
}

}  // namespace

TransitionRecord apply_topology_change(const HodgePair& h, const Betti& b, long N, long k, long c) {
    check_counts(N, k, c);
    require(h.h11 >= k, "h11(X_t) = h11(Xhat) - k", "h11 < k would make h11(X_t) negative");
    require(b.b2 >= k, "b2(X_t) = b2(Xhat) - k", "b2 < k would make b2(X_t) negative");
    require(h.h21 >= 0 && b.b1 >= 0 && b.b3 >= 0, "h, b >= 0", "negative input invariant");
    TransitionRecord r;
    r.N = N;
    r.k = k;
    r.c = c;
    r.hodge_before = h;
    r.betti_before = b;
    r.hodge_after = HodgePair{h.h11 - k, h.h21 + c};
    r.betti_after = Betti{b.b1, b.b2 - k, b.b3 + 2 * c};
    return r;
}

TransitionRecord revert_topology_change(const HodgePair& h_after, const Betti& b_after, long N,
                                        long k, long c) {
    check_counts(N, k, c);
    require(h_after.h21 >= c, "h21(Xhat) = h21(X_t) - c", "h21 < c would make h21(Xhat) negative");
    require(b_after.b3 >= 2 * c, "b3(Xhat) = b3(X_t) - 2c", "b3 < 2c would make b3(Xhat) negative");
    TransitionRecord r;
    r.N = N;
    r.k = k;
    r.c = c;
    r.hodge_after = h_after;
    r.betti_after = b_after;
    r.hodge_before = HodgePair{h_after.h11 + k, h_after.h21 - c};
    r.betti_before = Betti{b_after.b1, b_after.b2 + k, b_after.b3 - 2 * c};
    return r;
}

Counts infer_counts(const HodgePair& before, const HodgePair& after, long N) {
    const long k = before.h11 - after.h11;
    const long c = after.h21 - before.h21;
    require(k >= 0, "k = h11(Xhat) - h11(X_t) >= 0", "h11 increased across the transition");
    require(c >= 0, "c = h21(X_t) - h21(Xhat) >= 0", "h21 decreased across the transition");
    require(N == k + c, "N = k + c",
            "N = " + std::to_string(N) + " but the Hodge data give k + c = " +
                std::to_string(k + c));
    return Counts{k, c};
}

std::vector<TransitionRecord> example_catalog() {
    struct Entry {
        const char* name;
        HodgePair before;
        long N, k, c;
        bool kahler;
    };
    // The nodal quintic's exceptional curve is null-homologous, so k = 0.
    const Entry entries[] = {
        {"generic_quintic", {1, 100}, 1, 0, 1, false},
        {"schoen", {25, 0}, 125, 24, 101, true},
        {"mirror_quintic", {101, 0}, 1, 0, 1, true},
        {"tian_yau", {14, 23}, 15, 14, 1, true},
    };
    std::vector<TransitionRecord> out;
    for (const Entry& e : entries) {
        TransitionRecord r =
            apply_topology_change(e.before, betti_from_hodge(e.before), e.N, e.k, e.c);
        r.name = e.name;
        r.kahler_resolution = e.kahler;
        out.push_back(r);
    }
    return out;
}

// ---- exact linear algebra ------------------------------------------------------

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    if (b.is_zero()) throw DomainError("GaussianRational: division by zero");
    const Rational n = b.norm();
    const GaussianRational num = a * b.conj();
    return {num.re / n, num.im / n};
}

std::string to_string(const GaussianRational& z) {
    if (sgn(z.im) == 0) return z.re.get_str();
    std::string s = z.re.get_str();
    s += sgn(z.im) < 0 ? "-" : "+";
    s += Rational(abs(z.im)).get_str();
    s += "i";
    return s;
}

namespace {

bool is_zero(const Rational& q) { return sgn(q) == 0; }
bool is_zero(const GaussianRational& z) { return z.is_zero(); }

// Basis of { x : A x = 0 } from the reduced row echelon form of A (m x n).
template <typename F>
std::vector<std::vector<F>> kernel(std::vector<std::vector<F>> a, std::size_t n) {
    const std::size_t m = a.size();
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && is_zero(a[p][col])) ++p;
        if (p == m) continue;
        std::swap(a[p], a[row]);
        const F inv = F(Rational(1)) / a[row][col];
        for (auto& x : a[row]) x = x * inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || is_zero(a[r][col])) continue;
            const F factor = a[r][col];
            for (std::size_t j = 0; j < n; ++j) a[r][j] = a[r][j] - factor * a[row][j];
        }
        pivot_col.push_back(static_cast<int>(col));
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<F>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(n, F(Rational(0)));
        v[free] = F(Rational(1));
        for (std::size_t r = 0; r < pivot_col.size(); ++r) {
            v[pivot_col[r]] = F(Rational(0)) - a[r][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

template <typename F>
FriedmanResult solve(const std::vector<std::vector<F>>& rows) {
    FriedmanResult out;
    const std::size_t N = rows.size();
    if (N == 0) {
        out.feasible = true;
        return out;
    }
    const std::size_t m = rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != m) throw DomainError("friedman_witness: rows have different lengths");
    }
    // lambda^T M = 0  <=>  M^T lambda = 0.
    std::vector<std::vector<F>> mt(m, std::vector<F>(N));
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < m; ++j) mt[j][i] = rows[i][j];
    }
    const auto basis = kernel(std::move(mt), N);
    for (const auto& v : basis) {
        std::vector<GaussianRational> g;
        for (const auto& x : v) g.emplace_back(GaussianRational(x));
        out.kernel_basis.push_back(std::move(g));
    }
    for (std::size_t i = 0; i < N; ++i) {
        bool covered = false;
        for (const auto& v : basis) covered = covered || !is_zero(v[i]);
        if (!covered) return out;
    }
    // Each coordinate of sum_j s^j k_j is a non-zero polynomial of degree
    // < dim K in s, so some s <= N dim K + 1 makes all of them non-zero.
    const long bound = static_cast<long>(N * basis.size()) + 1;
    for (long s = 1; s <= bound; ++s) {
        std::vector<F> lambda(N, F(Rational(0)));
        F power = F(Rational(1));
        for (const auto& v : basis) {
            for (std::size_t i = 0; i < N; ++i) lambda[i] = lambda[i] + power * v[i];
            power = power * F(Rational(s));
        }
        if (std::none_of(lambda.begin(), lambda.end(), [](const F& x) { return is_zero(x); })) {
            out.feasible = true;
            out.s_used = s;
            for (const auto& x : lambda) out.lambda.emplace_back(GaussianRational(x));
            return out;
        }
    }
    throw Error("friedman_witness: witness search exceeded its proven bound");
}

}  // namespace

FriedmanResult friedman_witness(const RationalClassMatrix& classes) { return solve(classes); }

FriedmanResult friedman_witness(const ClassMatrix& classes) {
    const bool real = std::all_of(classes.begin(), classes.end(), [](const auto& row) {
        return std::all_of(row.begin(), row.end(), [](const GaussianRational& x) {
            return sgn(x.im) == 0;
        });
    });
    if (!real) return solve(classes);
    RationalClassMatrix q;
    for (const auto& row : classes) {
        std::vector<Rational> r;
        for (const auto& x : row) r.push_back(x.re);
        q.push_back(std::move(r));
    }
    return solve(q);
}

bool verify_witness(const ClassMatrix& classes, const std::vector<GaussianRational>& lambda) {
    if (lambda.size() != classes.size()) return false;
    if (classes.empty()) return true;
    for (const auto& l : lambda) {
        if (l.is_zero()) return false;
    }
    const std::size_t m = classes.front().size();
    for (std::size_t j = 0; j < m; ++j) {
        GaussianRational s;
        for (std::size_t i = 0; i < classes.size(); ++i) s = s + lambda[i] * classes[i].at(j);
        if (!s.is_zero()) return false;
    }
    return true;
}

// ---- Dwork -------------------------------------------------------------------

std::vector<ProjectivePoint5> dwork_raw_tuples() {
    std::vector<ProjectivePoint5> out;
    for (int code = 0; code < 3125; ++code) {
        ProjectivePoint5 p;
        int c = code;
        int sum = 0;
        for (int i = 4; i >= 0; --i) {
            p.a[i] = c % 5;
            c /= 5;
            sum += p.a[i];
        }
        if (sum % 5 == 0) out.push_back(p);
    }
    return out;
}

std::vector<ProjectivePoint5> dwork_singular_points() {
    std::set<ProjectivePoint5> classes;
    for (const auto& raw : dwork_raw_tuples()) {
        ProjectivePoint5 p;
        for (int i = 0; i < 5; ++i) p.a[i] = ((raw.a[i] - raw.a[0]) % 5 + 5) % 5;
        classes.insert(p);
    }
    return {classes.begin(), classes.end()};
}

namespace {

std::complex<double> xi_power(int e) {
    return std::polar(1.0, 2.0 * std::numbers::pi * (((e % 5) + 5) % 5) / 5.0);
}

}  // namespace

poly::Vec4c affine_point(const ProjectivePoint5& p) {
    poly::Vec4c z;
    for (int i = 0; i < 4; ++i) z[i] = xi_power(p.a[i + 1] - p.a[0]);
    return z;
}

DworkCheck dwork_check(const ProjectivePoint5& p) {
    std::array<std::complex<double>, 5> Z;
    for (int i = 0; i < 5; ++i) Z[i] = xi_power(p.a[i]);
    std::complex<double> prod{1.0, 0.0};
    std::complex<double> fifth{0.0, 0.0};
    for (const auto& z : Z) {
        prod *= z;
        fifth += std::pow(z, 5);
    }
    DworkCheck out;
    out.value_abs = std::abs(fifth - 5.0 * prod);
    for (int i = 0; i < 5; ++i) {
        std::complex<double> others{1.0, 0.0};
        for (int j = 0; j < 5; ++j) {
            if (j != i) others *= Z[j];
        }
        out.gradient_max =
            std::max(out.gradient_max, std::abs(5.0 * std::pow(Z[i], 4) - 5.0 * others));
    }
    return out;
}

std::string to_string(OdpStatus s) {
    switch (s) {
        case OdpStatus::nondegenerate: return "nondegenerate";
        case OdpStatus::degenerate: return "degenerate";
        default: return "not_singular";
    }
}

OdpDiagnostics verify_odp(const poly::Polynomial4& p, const poly::Vec4c& z) {
    OdpDiagnostics d;
    d.value_abs = std::abs(p.value(z));
    const double size = 1.0 + p.magnitude(z);
    if (d.value_abs > 1e-9 * size) {
        std::ostringstream os;
        os << "verify_odp: |P(z)| = " << d.value_abs << " exceeds 1e-9 (1 + sum|terms|) = "
           << 1e-9 * size;
        throw NotOnVarietyError(os.str());
    }
    d.gradient_norm = p.gradient(z).norm();
    if (d.gradient_norm > 1e-8 * size) {
        d.status = OdpStatus::not_singular;
        return d;
    }
    const poly::Mat4c h = p.hessian(z);
    d.scale = h.norm();
    d.hessian_det_abs = std::abs(h.determinant());
    d.threshold = 1e-8 * std::pow(d.scale, 4);
    d.is_odp = d.scale > 0.0 && d.hessian_det_abs > d.threshold;
    d.status = d.is_odp ? OdpStatus::nondegenerate : OdpStatus::degenerate;
    return d;
}

poly::Vec4c random_dwork_point(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const poly::Polynomial4 P = poly::dwork_affine();
    poly::Vec4c z;
    for (int i = 0; i < 3; ++i) z[i] = {unit(rng), unit(rng)};
    // z4^5 - 5 z1 z2 z3 z4 + (1 + z1^5 + z2^5 + z3^5) = 0 via its companion matrix.
    const std::complex<double> b = -5.0 * z[0] * z[1] * z[2];
    const std::complex<double> c0 = 1.0 + std::pow(z[0], 5) + std::pow(z[1], 5) + std::pow(z[2], 5);
    Eigen::Matrix<std::complex<double>, 5, 5> comp = Eigen::Matrix<std::complex<double>, 5, 5>::Zero();
    for (int i = 1; i < 5; ++i) comp(i, i - 1) = 1.0;
    comp(0, 4) = -c0;
    comp(1, 4) = -b;
    Eigen::ComplexEigenSolver<Eigen::Matrix<std::complex<double>, 5, 5>> es(comp, false);
    const int pick = static_cast<int>(rng() % 5);
    z[3] = es.eigenvalues()[pick];
    for (int it = 0; it < 4; ++it) {
        const std::complex<double> f = P.value(z);
        const std::complex<double> df = P.gradient(z)[3];
        if (df == std::complex<double>{0.0, 0.0}) break;
        z[3] -= f / df;
    }
    return z;
}

// ---- cyclotomic arithmetic ---------------------------------------------------

Cyclotomic5 Cyclotomic5::power(int e) {
    Cyclotomic5 x;
    x.c[((e % 5) + 5) % 5] = 1;
    return x;
}

Cyclotomic5 Cyclotomic5::integer(long n) {
    Cyclotomic5 x;
    x.c[0] = n;
    return x;
}

bool Cyclotomic5::is_zero_in_field() const {
    return std::all_of(c.begin(), c.end(), [&](const BigInt& v) { return v == c[0]; });
}

Cyclotomic5 operator+(const Cyclotomic5& a, const Cyclotomic5& b) {
    Cyclotomic5 r;
    for (int i = 0; i < 5; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

Cyclotomic5 operator-(const Cyclotomic5& a, const Cyclotomic5& b) {
    Cyclotomic5 r;
    for (int i = 0; i < 5; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

Cyclotomic5 operator*(const Cyclotomic5& a, const Cyclotomic5& b) {
    Cyclotomic5 r;
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) r.c[(i + j) % 5] += a.c[i] * b.c[j];
    }
    return r;
}

namespace {

// Integer-coefficient monomial evaluated at z_i = xi^{e_i}.
Cyclotomic5 exact_monomial(long coeff, const std::array<int, 4>& exps, const std::array<int, 4>& at) {
    Cyclotomic5 r = Cyclotomic5::integer(coeff);
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < exps[i]; ++k) r = r * Cyclotomic5::power(at[i]);
    }
    return r;
}

Cyclotomic5 det4(const std::array<std::array<Cyclotomic5, 4>, 4>& m) {
    std::array<int, 4> perm{0, 1, 2, 3};
    Cyclotomic5 total;
    do {
        int inversions = 0;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) inversions += perm[i] > perm[j];
        }
        Cyclotomic5 term = Cyclotomic5::integer(inversions % 2 == 0 ? 1 : -1);
        for (int i = 0; i < 4; ++i) term = term * m[i][perm[i]];
        total = total + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

}  // namespace

ExactOdpCheck exact_odp_check(const ProjectivePoint5& p) {
    std::array<int, 4> at;
    for (int i = 0; i < 4; ++i) at[i] = p.a[i + 1] - p.a[0];
    const poly::Polynomial4 P = poly::dwork_affine();
    Cyclotomic5 value;
    std::array<Cyclotomic5, 4> grad;
    std::array<std::array<Cyclotomic5, 4>, 4> hess;
    for (const auto& t : P.terms()) {
        const long coeff = std::lround(t.coeff.real());
        value = value + exact_monomial(coeff, t.exps, at);
        for (int i = 0; i < 4; ++i) {
            if (t.exps[i] == 0) continue;
            auto ei = t.exps;
            --ei[i];
            grad[i] = grad[i] + exact_monomial(coeff * t.exps[i], ei, at);
            for (int j = 0; j < 4; ++j) {
                if (ei[j] == 0) continue;
                auto eij = ei;
                --eij[j];
                hess[i][j] = hess[i][j] + exact_monomial(coeff * t.exps[i] * ei[j], eij, at);
            }
        }
    }
    ExactOdpCheck out;
    out.value_zero = value.is_zero_in_field();
    out.gradient_zero = std::all_of(grad.begin(), grad.end(),
                                    [](const Cyclotomic5& g) { return g.is_zero_in_field(); });
    out.hessian_nonzero = !det4(hess).is_zero_in_field();
    return out;
}

}  // namespace conifold::transitions
