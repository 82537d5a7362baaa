#pragma once

// Radial Kahler potentials of the Ricci-flat metrics on the conifold cone,
// its smoothing and its small resolution, together with the ODE and
// Monge-Ampere certificates they satisfy.
//
//   cone        f = (3/2) tau^{2/3}
//   smoothed(t) f_t(tau) = |t|^{2/3} f_1(tau / |t|),
//               f_1(s) = 2^{-1/3} int_0^{acosh s} (sinh 2l - 2l)^{1/3} dl
//   resolved(a) f_a(tau) = a^2 f_1(tau / a^3),  f_1(s) = int_0^s gamma(u)/u du,
//               gamma^3 + 6 gamma^2 = s^2
//
// All three satisfy their ODE with c = 2/3. Potentials vanish at the lower
// end of the domain.

#include <conifold/conifold_core.hpp>
#include <conifold/quadrature.hpp>

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace conifold::metrics {

using core::cplx;

enum class Kind { cone, smoothed, resolved };

struct PotentialFamily {
    Kind kind = Kind::cone;
    cplx t{0.0, 0.0};  // smoothed only
    double a = 0.0;    // resolved only

    static PotentialFamily cone();
    static PotentialFamily smoothed(cplx t);
    static PotentialFamily resolved(double a);

    double c() const { return 2.0 / 3.0; }
    double domain_min() const;  // |t| for the smoothing, 0 otherwise
    double parameter() const;   // |t|, a, or 0
    std::string name() const;   // "cone", "smoothed", "resolved"
};

Kind parse_kind(const std::string& name);

struct PotentialSample {
    double tau = 0.0;
    double f = 0.0;
    double fp = 0.0;
    double fpp = 0.0;
    double f_error = 0.0;  // quadrature error estimate for f
};

// Cone ODE constant attained by f = A tau^{2/3}: 16 A^3 / 81.
double cone_constant_for_amplitude(double amplitude);

// Root gamma >= 0 of gamma^3 + 6 a^2 gamma^2 = tau^2, through the Cardano
// closed form on the principal complex cube root, then Newton-polished.
double gamma_resolved(double tau, double a = 1.0);

struct Derivatives {
    double fp = 0.0;
    double fpp = 0.0;
};

// Closed-form f' and f''. Throws DomainError outside the family domain.
Derivatives potential_derivatives(const PotentialFamily& fam, double tau);

PotentialSample potential_value(const PotentialFamily& fam, double tau,
                                const quad::Options& opts = {});

// Positivity conditions of the family at tau, given f' and f''.
bool positive(const PotentialFamily& fam, double tau, const Derivatives& d);

// |LHS - c| / c for the family ODE. Throws PositivityError when the
// positivity conditions fail at tau.
double ode_residual(const PotentialFamily& fam, double tau);

struct HermitianHessian {
    Eigen::Matrix3cd H;
    double density = 0.0;  // |Omega|^2 in the chart coordinates
    double tau = 0.0;
    int chart = 0;
};

// Cone / smoothing: coordinates are the three z_j other than the dominant
// one; density |2 z_c|^{-2} from the residue volume form.
HermitianHessian hermitian_hessian(const PotentialFamily& fam, const core::FiberPoint& p);

// Resolution: chart (X, W1, W2) of the affine P^1 chart with the larger
// |U_i| set to 1, potential 4 a^2 log(1 + |X|^2) + f(tau); density 1.
HermitianHessian hermitian_hessian(const PotentialFamily& fam, const core::ResolvedPoint& q);

// det(H) / density, real part.
double ma_ratio(const HermitianHessian& h);

// The value ma_ratio takes with the conventions above: 4c for the cone and
// the smoothing, c for the resolution.
double expected_ma_constant(const PotentialFamily& fam);

// ma_ratio at the family's reference point (smoothing tau = 2 |t|, cone
// tau = 1, resolution X = 0, W = (1, 0) after scaling).
double calibrate_ma(const PotentialFamily& fam);

// |ma_ratio / calibrated - 1|.
double monge_ampere_residual(const HermitianHessian& h, double calibrated);

// Point (i alpha, 0, 0, beta) e^{i arg(t)/2} with |z|^2 = tau on V_t.
core::FiberPoint normal_form_point(const PotentialFamily& fam, double tau);

// Normal form point moved by a random SO(4) rotation drawn from seed.
core::FiberPoint sample_fiber_point(const PotentialFamily& fam, double tau,
                                    std::uint64_t seed);

// Random resolved point with |W| = radius in the requested P^1 chart.
core::ResolvedPoint sample_resolved_point(double radius, int chart, std::uint64_t seed);

// Smallest tau accepted by asymptotic_deviation: 10 max(|t|, a^3), and 0
// for the cone.
double asymptotic_threshold(const PotentialFamily& fam);

// f(tau) minus its leading asymptotics (smoothing: (3/2) tau^{2/3};
// resolution: (3/2) tau^{2/3} - 2 a^2 log(tau / a^3)), with the additive
// constant chosen so that the deviation vanishes at infinity. Computed as
// -int_tau^inf (f' - leading') ds.
double asymptotic_deviation(const PotentialFamily& fam, double tau,
                            const quad::Options& opts = {});

// Integrand of asymptotic_deviation at unit parameter; exposed for tests.
double smoothed_tail_remainder(double sigma);
double resolved_tail_remainder(double sigma);

// For each parameter p (a for the resolution, |t| for the smoothing):
// sup over `grid` equispaced points of [tau0, tau1] of
// |f_p(tau) - (3/2) tau^{2/3}| after matching both at tau0.
std::vector<double> potential_convergence_sup(Kind kind, const std::vector<double>& params,
                                              double tau0, double tau1, int grid = 200,
                                              const quad::Options& opts = {});

}  // namespace conifold::metrics
