#pragma once

// Topology change across a conifold transition Xhat -> X_0 ~> X_t, the
// first-order smoothing criterion for contracted curve classes, and the
// nodes of the Dwork quintic at psi = 1.

#include <conifold/exact.hpp>
#include <conifold/polynomial.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace conifold::transitions {

struct HodgePair {
    long h11 = 0;
    long h21 = 0;
    bool operator==(const HodgePair&) const = default;
};

struct Betti {
    long b1 = 0;
    long b2 = 0;
    long b3 = 0;
    bool operator==(const Betti&) const = default;
};

// 2 - 2 b1 + 2 b2 - b3 for a closed orientable six-manifold.
long euler_characteristic(const Betti& b);

// Betti numbers of a simply connected Calabi-Yau threefold.
Betti betti_from_hodge(const HodgePair& h);

struct TransitionRecord {
    std::string name;
    long N = 0;
    long k = 0;
    long c = 0;
    HodgePair hodge_before;  // Xhat
    HodgePair hodge_after;   // X_t
    Betti betti_before;
    Betti betti_after;
    bool kahler_resolution = true;
};

// Resolution side -> smoothing side: h11 - k, h21 + c, b2 - k, b3 + 2c.
// Throws TransitionError naming the violated relation.
TransitionRecord apply_topology_change(const HodgePair& h, const Betti& b, long N, long k, long c);

// Smoothing side -> resolution side, the inverse of apply_topology_change.
TransitionRecord revert_topology_change(const HodgePair& h_after, const Betti& b_after, long N,
                                        long k, long c);

struct Counts {
    long k = 0;
    long c = 0;
};

Counts infer_counts(const HodgePair& before, const HodgePair& after, long N);

// Generic nodal quintic, Schoen, mirror quintic, Tian-Yau.
std::vector<TransitionRecord> example_catalog();

// ---- first-order smoothing criterion ---------------------------------------

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

std::string to_string(const GaussianRational& z);

// One row per contracted curve class [C_i], in a fixed basis of H_2.
using ClassMatrix = std::vector<std::vector<GaussianRational>>;
using RationalClassMatrix = std::vector<std::vector<Rational>>;

struct FriedmanResult {
    bool feasible = false;
    std::vector<GaussianRational> lambda;  // every entry non-zero when feasible
    std::vector<std::vector<GaussianRational>> kernel_basis;
    long s_used = 0;  // parameter of the witness sum_j s^j k_j
};

// Finds lambda with sum_i lambda_i [C_i] = 0 and all lambda_i != 0, or
// reports infeasibility. Input with no imaginary parts is solved over Q.
FriedmanResult friedman_witness(const ClassMatrix& classes);
FriedmanResult friedman_witness(const RationalClassMatrix& classes);

// Exact check of sum_i lambda_i row_i = 0 with every lambda_i non-zero.
bool verify_witness(const ClassMatrix& classes, const std::vector<GaussianRational>& lambda);

// ---- Dwork quintic ----------------------------------------------------------

// Exponents (a_0..a_4) of [xi^{a_0} : ... : xi^{a_4}], xi = exp(2 pi i / 5).
struct ProjectivePoint5 {
    std::array<int, 5> a{};
    bool operator==(const ProjectivePoint5&) const = default;
    bool operator<(const ProjectivePoint5& o) const { return a < o.a; }
};

// All 625 tuples in (Z/5)^5 with sum a_i = 0 mod 5.
std::vector<ProjectivePoint5> dwork_raw_tuples();

// The 125 classes modulo a_i -> a_i + 1, each represented with a_0 = 0.
std::vector<ProjectivePoint5> dwork_singular_points();

// The point in the affine chart Z_0 = 1.
poly::Vec4c affine_point(const ProjectivePoint5& p);

struct DworkCheck {
    double value_abs = 0.0;     // |P| in homogeneous coordinates
    double gradient_max = 0.0;  // max_i |dP/dZ_i|
};

// Homogeneous P = sum Z_i^5 - 5 prod Z_i and its gradient at the point.
DworkCheck dwork_check(const ProjectivePoint5& p);

enum class OdpStatus { nondegenerate, degenerate, not_singular };

std::string to_string(OdpStatus s);

struct OdpDiagnostics {
    bool is_odp = false;
    OdpStatus status = OdpStatus::not_singular;
    double value_abs = 0.0;
    double gradient_norm = 0.0;
    double hessian_det_abs = 0.0;
    double scale = 0.0;      // Frobenius norm of the Hessian
    double threshold = 0.0;  // 1e-8 scale^4
};

// Certifies an ordinary double point by a nondegenerate Hessian. A point
// with non-vanishing gradient is reported as not_singular; a point off the
// hypersurface throws NotOnVarietyError.
OdpDiagnostics verify_odp(const poly::Polynomial4& p, const poly::Vec4c& z);

// Random point of { dwork_affine = 0 }: z_1..z_3 drawn from seed and z_4 a
// root of the remaining quintic.
poly::Vec4c random_dwork_point(std::uint64_t seed);

// ---- exact cyclotomic mode ---------------------------------------------------

// Element of Z[x]/(x^5 - 1). Its image in Z[xi] vanishes exactly when all
// five coefficients agree.
struct Cyclotomic5 {
    std::array<BigInt, 5> c{};

    static Cyclotomic5 power(int e);
    static Cyclotomic5 integer(long n);

    bool is_zero_in_field() const;

    friend Cyclotomic5 operator+(const Cyclotomic5& a, const Cyclotomic5& b);
    friend Cyclotomic5 operator-(const Cyclotomic5& a, const Cyclotomic5& b);
    friend Cyclotomic5 operator*(const Cyclotomic5& a, const Cyclotomic5& b);
};

struct ExactOdpCheck {
    bool value_zero = false;
    bool gradient_zero = false;
    bool hessian_nonzero = false;  // det of the affine Hessian is non-zero in Z[xi]
};

ExactOdpCheck exact_odp_check(const ProjectivePoint5& p);

}  // namespace conifold::transitions
