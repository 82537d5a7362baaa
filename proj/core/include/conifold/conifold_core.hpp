#pragma once

// Local models of the conifold transition: the smoothing family
// V_t = { z in C^4 : sum z_i^2 = t }, its small resolution
// O(-1) + O(-1) -> V_0, and the holomorphic volume forms on both.
//
// Coordinates are 0-based in code; chart j means "solve for z_j", so the chart
// written z_4 != 0 in the literature is chart index 3 here.

#include <conifold/exterior.hpp>

#include <Eigen/Core>

#include <array>
#include <complex>

namespace conifold::core {

using cplx = std::complex<double>;
using Vec4c = Eigen::Matrix<cplx, 4, 1>;
using Vec4d = Eigen::Vector4d;
using Frame3 = std::array<Vec4c, 3>;

struct FiberPoint {
    Vec4c z = Vec4c::Zero();
    cplx t{0.0, 0.0};
};

// sum z_i^2 - t.
cplx fiber_defect(const FiberPoint& p);

bool on_fiber(const FiberPoint& p, double tol);

// S_lambda(z, t) = (lambda^{3/2} z, lambda^3 t), lambda^{1/2} on the principal branch.
FiberPoint rescale_fiber(const FiberPoint& p, cplx lambda);

// Phi_t(z) = z + conj(z) t / (2 |z|^2), mapping V_0 minus a ball into V_t.
// Requires |z|^2 > |t|/2, where Phi_t is injective.
FiberPoint phi_map(const FiberPoint& p, cplx t);

// Derivative of Phi_t at z applied to a real tangent vector v.
Vec4c phi_map_differential(const Vec4c& z, cplx t, const Vec4c& v);

// Chart of maximal |z_j|, ties to the lowest index.
int dominant_chart(const Vec4c& z);

// Smallest |z_j| accepted for chart j: |z| / 4.
double chart_margin(const Vec4c& z);

struct ThreeFormValue {
    int chart = 3;   // solved coordinate
    cplx coeff{};    // coefficient of the wedge of the other three dz's, in order
};

// Residue form Res(dz_1..dz_4 / F) for F = sum z^2 - t: in chart j,
// (-1)^(3-j) dz_(others) / (2 z_j).
ThreeFormValue holomorphic_volume_form(const FiberPoint& p, int chart);

// The model form Omega_t = dz_1 dz_2 dz_3 / z_4 and its continuation to the
// other charts; it equals twice the residue form.
ThreeFormValue model_volume_form(const FiberPoint& p, int chart);

// Contract a chart form with three ambient tangent vectors.
cplx evaluate_on_frame(const ThreeFormValue& form, const Frame3& frame);

// Model form on a frame, evaluated in the dominant chart.
cplx model_form_on_frame(const Vec4c& z, const Frame3& frame);

// ---- first-order deformation form on V_0 ----------------------------------
//
// Expressed in chart 3 (z_4 solved) on the generators
// dz1 dz2 dz3 conj(dz1) conj(dz2) conj(dz3).

// Ambient tangent vector -> values of the six chart generators.
void chart_generator_values(const Vec4c& v, cplx out[exterior::kGenerators]);

// dz_i on V_0 in chart 3, i = 0..3.
exterior::Form coordinate_differential(const Vec4c& z, int i);
exterior::Form coordinate_differential_conj(const Vec4c& z, int i);

// Omega_0 = dz1 dz2 dz3 / z4 in chart 3.
exterior::Form omega_0_form(const Vec4c& z);

// Phi_t^* Omega_t at z in V_0, computed by the chain rule in chart 3.
exterior::Form pullback_model_form(const Vec4c& z, cplx t);

// The t-linear coefficient of Phi_t^* Omega_t:
//   -conj(z4) / (2 z4^2 |z|^2) dz1 dz2 dz3
//   + (1/z4) [ d(conj z1 / 2|z|^2) dz2 dz3 + dz1 d(conj z2 / 2|z|^2) dz3
//              + dz1 dz2 d(conj z3 / 2|z|^2) ].
exterior::Form omega_tilde_1_form(const Vec4c& z);

// Ten coefficients in the fixed order
//   dz1dz2dz3, then conj(dz_i) dz_j dz_k for i = 1..3, (j,k) in (12, 13, 23).
std::array<cplx, 10> omega_tilde_1_coefficients(const Vec4c& z);

cplx omega_tilde_1(const Vec4c& z, const Frame3& frame);

// |d Omega~_1| at z by fourth-order central differences of the coefficient
// array in the chart coordinates, step 1e-4 |z|.
double omega_tilde_1_exterior_derivative_norm(const Vec4c& z);

// Three real tangent vectors of V_0 at z spanning a generic 3-plane, built
// from a deterministic seed.
Frame3 tangent_frame_v0(const Vec4c& z, unsigned long long seed);

// Point of V_0 in chart 3 obtained from its first three coordinates, taking
// the square root nearest `reference_z4`.
Vec4c complete_on_fiber(const cplx& z1, const cplx& z2, const cplx& z3, cplx t,
                        cplx reference_z4);

// ---- real splitting V_t ~ T S^3 (t > 0) ------------------------------------

struct RealSplitting {
    Vec4d u = Vec4d::Zero();  // x / |x|
    Vec4d v = Vec4d::Zero();  // y |y|
};

RealSplitting real_coordinates(const FiberPoint& p, double tol = 1e-10);

// Inverse of real_coordinates at the given real t > 0.
FiberPoint from_real_coordinates(const RealSplitting& s, double t);

// ---- small resolution -------------------------------------------------------

struct ResolvedPoint {
    std::array<cplx, 2> u{cplx{1.0, 0.0}, cplx{0.0, 0.0}};  // [U1:U2], max |U_i| = 1
    std::array<cplx, 2> w{};                                // (W1, W2)

    // Normalizes [U1:U2] to max modulus 1, rescaling the fiber so that every
    // U_i W_j is unchanged.
    static ResolvedPoint make(cplx u1, cplx u2, cplx w1, cplx w2);
};

// (x, y, z, w) = (U1 W1, U2 W2, U1 W2, U2 W1), a point of { xy - zw = 0 }.
Vec4c resolve_project(const ResolvedPoint& q);

// xy - zw.
cplx quadric_defect(const Vec4c& xyzw);

// W -> a^{3/2} W.
ResolvedPoint resolved_rescale(const ResolvedPoint& q, double a);

}  // namespace conifold::core
