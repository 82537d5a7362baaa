#pragma once

// Vanishing cycle L_t = { |z|^2 = |t| } in V_t, parametrized as t^{1/2} u for
// u in the unit three-sphere.

#include <conifold/conifold_core.hpp>

#include <array>
#include <vector>

namespace conifold::slag {

using core::cplx;

struct CycleNode {
    core::Vec4d u;                  // point of the unit S^3
    std::array<core::Vec4d, 3> e;   // oriented orthonormal tangent frame at u
    core::Vec4c z;                  // t^{1/2} u
    core::Frame3 frame;             // t^{1/2} e
    double weight = 0.0;            // S^3 surface measure weight
};

struct CycleGrid {
    cplx t{1.0, 0.0};
    int resolution = 0;
    int orientation = 1;  // +1 matches the integral +2 pi^2 t
    std::vector<CycleNode> nodes;
};

// Hyperspherical product grid (theta1, theta2, phi):
//   u = (cos th1, sin th1 cos th2, sin th1 sin th2 cos phi, sin th1 sin th2 sin phi)
// with composite two-point Gauss-Legendre in th1, th2 over resolution/2
// panels and the offset trapezoid rule in phi, so no node has u_4 = 0.
// resolution must be even and at least 8; there are resolution^3 nodes.
CycleGrid sample_vanishing_cycle(cplx t, int resolution);

// The same grid with the opposite orientation.
CycleGrid reversed(CycleGrid grid);

enum class Route {
    real_slice,     // t det(e_1, e_2, e_3 | x1 x2 x3) / u_4
    stitched_chart  // model form in the dominant complex chart at each node
};

cplx integrate_volume_form(const CycleGrid& grid, Route route = Route::real_slice);

// 2 pi^2 t.
cplx exact_cycle_integral(cplx t);

// |Im(e^{-i arg t} Omega_t(frame))| / |Omega_t(frame)|. Throws DomainError
// when a frame vector violates either defining constraint of L_t beyond
// 1e-8 |z| |v|.
double calibration_residual(cplx t, const core::Vec4c& z, const core::Frame3& frame);

// max over frame pairs of |omega(v, w)| / (|v| |w|) for the flat Kahler
// form omega(v, w) = Im <v, w>.
double lagrangian_residual(const core::Frame3& frame);

// Frame with its first leg turned by angle alpha toward i e_1. It stays
// tangent to both constraints but is no longer calibrated.
core::Frame3 rotate_first_leg(const core::Frame3& frame, double alpha);

}  // namespace conifold::slag
