#pragma once

// Composite numerical checks shared by the subcommands and the acceptance
// runner.

#include <conifold/conifold_core.hpp>
#include <conifold/transitions.hpp>

#include <cstdint>

namespace conifold::lab {

// Fixed point of V_0 \ {0} with the z_4 chart comfortably valid.
core::Vec4c generic_v0_point();

// |(Phi_t^* Omega_t - Omega_0) / t - Omega~_1| / |Omega~_1| at z.
double expansion_error(const core::Vec4c& z, core::cplx t);

// |d Omega~_1| / (|Omega~_1| / |z|).
double closedness_measure(const core::Vec4c& z);

// Relative change of Omega~_1 on a random tangent frame under z -> mu z,
// frame -> mu frame with mu = lambda^{3/2}.
double omega_tilde_1_scaling_residual(const core::Vec4c& z, core::cplx lambda, std::uint64_t seed);

// Same for Omega_0, which picks up the factor mu^2.
double omega_0_scaling_residual(const core::Vec4c& z, core::cplx lambda, std::uint64_t seed);

// Rows e_1..e_14 and -(e_1 + ... + e_14).
transitions::RationalClassMatrix tian_yau_classes();

struct BruteForceAudit {
    long cases = 0;
    long disagreements = 0;  // library and oracle differ on feasibility
    long unsound = 0;        // returned witness fails exact verification
};

// Every 0/+-1 matrix with 1 <= N <= max_rows rows and 1 <= m <= max_cols columns.
BruteForceAudit friedman_bruteforce_audit(int max_rows, int max_cols);

}  // namespace conifold::lab
