#include <conifold_lab/acceptance.hpp>

#include <conifold_lab/checks.hpp>

#include <conifold/cdlo_metrics.hpp>
#include <conifold/error.hpp>
#include <conifold/hodge_euler.hpp>
#include <conifold/slag.hpp>
#include <conifold/transitions.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

namespace conifold::lab {

bool CriterionResult::passed() const {
    return !assertions.empty() &&
           std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

namespace {

using core::cplx;
using metrics::Kind;
using metrics::PotentialFamily;

struct Ctx {
    Profile profile;
    std::uint64_t seed;
    bool full() const { return profile == Profile::full; }
};

using Sink = std::vector<Assertion>;

void expect(Sink& out, std::string name, double measured, Compare c, double tol) {
    out.push_back(make_assertion(std::move(name), measured, c, tol));
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) {
        g[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
    }
    return g;
}

double to_double(const BigInt& x) { return x.get_d(); }

// ---- 1 ----
void quintic_diamond(const Ctx&, Sink& out) {
    const hodge::HypersurfaceSpec quintic(4, 5);
    const hodge::HodgeDiamond hd = hodge::hodge_diamond(quintic);
    const long expected[4][4] = {{1, 0, 0, 1}, {0, 1, 101, 0}, {0, 101, 1, 0}, {1, 0, 0, 1}};
    long mismatches = 0;
    for (int p = 0; p < 4; ++p) {
        for (int q = 0; q < 4; ++q) mismatches += hd(p, q) != expected[p][q];
    }
    expect(out, "diamond_mismatches", static_cast<double>(mismatches), Compare::eq, 0);
    expect(out, "h11", to_double(hd(1, 1)), Compare::eq, 1);
    expect(out, "h21", to_double(hd(2, 1)), Compare::eq, 101);
    expect(out, "chi_omega_x", to_double(hodge::chi_hypersurface_omega_p(quintic, 1, 0)),
           Compare::eq, 100);
}

// ---- 2 ----
void k3_and_moduli(const Ctx&, Sink& out) {
    const hodge::HodgeDiamond k3 = hodge::hodge_diamond(hodge::HypersurfaceSpec(3, 4));
    expect(out, "k3_h11", to_double(k3(1, 1)), Compare::eq, 20);
    expect(out, "quintic_moduli", to_double(hodge::quintic_moduli_dimension()), Compare::eq, 101);
    expect(out, "quartic_moduli", to_double(hodge::quartic_k3_moduli_dimension()), Compare::eq, 19);
}

// ---- 3 ----
double min_relative_eigenvalue(const Eigen::Matrix3cd& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() / es.eigenvalues().cwiseAbs().maxCoeff();
}

void ode_ma(const Ctx& ctx, Sink& out) {
    const int n = ctx.full() ? 100 : 20;
    struct Fam {
        PotentialFamily fam;
        double lo, hi;
    };
    const Fam fams[] = {{PotentialFamily::cone(), 1e-2, 1e3},
                        {PotentialFamily::smoothed(1.0), 1.01, 1e3},
                        {PotentialFamily::resolved(1.0), 1e-2, 1e2}};
    for (const Fam& f : fams) {
        const double cal = metrics::calibrate_ma(f.fam);
        double worst_ode = 0.0;
        double worst_ma = 0.0;
        double min_eig = 1.0;
        const auto grid = log_grid(f.lo, f.hi, n);
        for (int i = 0; i < n; ++i) {
            const std::uint64_t s = ctx.seed * 1000003ULL + static_cast<std::uint64_t>(i);
            metrics::HermitianHessian h;
            if (f.fam.kind == Kind::resolved) {
                h = metrics::hermitian_hessian(f.fam, metrics::sample_resolved_point(grid[i], i % 2, s));
            } else {
                h = metrics::hermitian_hessian(f.fam, metrics::sample_fiber_point(f.fam, grid[i], s));
            }
            worst_ode = std::max(worst_ode, metrics::ode_residual(f.fam, h.tau));
            worst_ma = std::max(worst_ma, metrics::monge_ampere_residual(h, cal));
            min_eig = std::min(min_eig, min_relative_eigenvalue(h.H));
        }
        const std::string name = f.fam.name();
        expect(out, name + ".ode_residual_max", worst_ode, Compare::lt, 1e-8);
        expect(out, name + ".ma_residual_max", worst_ma, Compare::lt, 1e-7);
        expect(out, name + ".min_eigenvalue_rel", min_eig, Compare::gt, 0.0);
    }
}

// ---- 4 ----
void small_tau(const Ctx&, Sink& out) {
    const auto d = metrics::potential_derivatives(PotentialFamily::resolved(1.0), 1e-8);
    expect(out, "fp_minus_inv_sqrt6", std::abs(d.fp - 1.0 / std::sqrt(6.0)), Compare::lt, 1e-6);
}

// ---- 5 ----
void asymptotics(const Ctx& ctx, Sink& out) {
    const int n = ctx.full() ? 50 : 15;
    const auto grid = log_grid(1e2, 1e6, n);
    const PotentialFamily rs = PotentialFamily::resolved(1.0);
    const PotentialFamily sm = PotentialFamily::smoothed(1.0);
    double bound = 0.0;
    long non_decreasing = 0;
    double prev = 0.0;
    double first = 0.0;
    double last = 0.0;
    for (int i = 0; i < n; ++i) {
        const double tau = grid[i];
        bound = std::max(bound, std::abs(metrics::asymptotic_deviation(rs, tau)) * std::pow(tau, 0.25));
        const double d = metrics::asymptotic_deviation(sm, tau);
        if (i == 0) first = d;
        if (i > 0 && !(std::abs(d) < std::abs(prev))) ++non_decreasing;
        prev = d;
        last = d;
    }
    expect(out, "resolved.sup_dev_tau_quarter", bound, Compare::le, 2.0);
    expect(out, "smoothed.non_decreasing_steps", static_cast<double>(non_decreasing), Compare::eq, 0);
    expect(out, "smoothed.last_over_first", std::abs(last / first), Compare::lt, 1e-3);
}

// ---- 6 ----
void potential_continuity(const Ctx& ctx, Sink& out) {
    const std::vector<double> params = {1.0, 0.5, 0.25, 0.125, 1e-3};
    const int grid = ctx.full() ? 200 : 50;
    for (Kind k : {Kind::resolved, Kind::smoothed}) {
        const auto sups = metrics::potential_convergence_sup(k, params, 1.0, 10.0, grid);
        long bad = 0;
        for (std::size_t i = 1; i < sups.size(); ++i) bad += !(sups[i] < sups[i - 1]);
        const std::string name = k == Kind::resolved ? "resolved" : "smoothed";
        expect(out, name + ".non_decreasing_steps", static_cast<double>(bad), Compare::eq, 0);
        expect(out, name + ".sup_at_1e-3", sups.back(), Compare::lt, 1e-3);
    }
}

// ---- 7 ----
double cycle_error(cplx t, int resolution) {
    const auto grid = slag::sample_vanishing_cycle(t, resolution);
    const cplx exact = slag::exact_cycle_integral(t);
    return std::abs(slag::integrate_volume_form(grid) - exact) / std::abs(exact);
}

void cycle_integral(const Ctx&, Sink& out) {
    const cplx ts[] = {1.0, cplx{0.0, 1.0}, std::polar(0.3, std::numbers::pi / 5)};
    const char* names[] = {"t=1", "t=i", "t=0.3exp(i pi/5)"};
    for (int i = 0; i < 3; ++i) {
        expect(out, std::string(names[i]) + ".rel_error", cycle_error(ts[i], 32), Compare::lt, 1e-4);
    }
    const double order = std::log2(cycle_error(1.0, 16) / cycle_error(1.0, 32));
    expect(out, "observed_order", order, Compare::ge, 2.0);
}

// ---- 8 ----
void calibration(const Ctx& ctx, Sink& out) {
    const cplx t = std::polar(1.0, std::numbers::pi / 3);
    const auto grid = slag::sample_vanishing_cycle(t, 16);
    std::mt19937_64 rng(ctx.seed + 8);
    std::uniform_int_distribution<std::size_t> pick(0, grid.nodes.size() - 1);
    double worst = 0.0;
    double worst_lagrangian = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto& node = grid.nodes[pick(rng)];
        worst = std::max(worst, slag::calibration_residual(t, node.z, node.frame));
        worst_lagrangian = std::max(worst_lagrangian, slag::lagrangian_residual(node.frame));
    }
    const auto& node = grid.nodes[pick(rng)];
    const double control = slag::calibration_residual(
        t, node.z, slag::rotate_first_leg(node.frame, std::numbers::pi / 4));
    expect(out, "calibration_residual_max", worst, Compare::lt, 1e-10);
    expect(out, "lagrangian_residual_max", worst_lagrangian, Compare::lt, 1e-10);
    expect(out, "negative_control", control, Compare::gt, 1e-2);
}

// ---- 9 ----
void deformation_form(const Ctx& ctx, Sink& out) {
    const core::Vec4c z = generic_v0_point();
    const cplx phase = std::polar(1.0, 0.37);
    const double e2 = expansion_error(z, 1e-2 * phase);
    const double e3 = expansion_error(z, 1e-3 * phase);
    const double e4 = expansion_error(z, 1e-4 * phase);
    expect(out, "ratio_1e-2_over_1e-3", std::abs(e2 / e3 - 10.0) / 10.0, Compare::le, 0.2);
    expect(out, "ratio_1e-3_over_1e-4", std::abs(e3 / e4 - 10.0) / 10.0, Compare::le, 0.2);
    expect(out, "closedness", closedness_measure(z), Compare::lt, 1e-6);
    double worst = 0.0;
    for (double mod : {0.5, 2.0, 10.0}) {
        for (double arg : {0.0, 0.9}) {
            worst = std::max(worst, omega_tilde_1_scaling_residual(z, std::polar(mod, arg), ctx.seed + 9));
        }
    }
    expect(out, "scale_invariance", worst, Compare::lt, 1e-10);
}

// ---- 10 ----
void topology(const Ctx&, Sink& out) {
    long failures = 0;
    for (const auto& r : transitions::example_catalog()) {
        const auto counts = transitions::infer_counts(r.hodge_before, r.hodge_after, r.N);
        failures += counts.k != r.k || counts.c != r.c;
        failures += r.N != r.k + r.c;
        const auto again = transitions::apply_topology_change(r.hodge_before, r.betti_before, r.N,
                                                              counts.k, counts.c);
        failures += !(again.hodge_after == r.hodge_after) || !(again.betti_after == r.betti_after);
        failures += transitions::euler_characteristic(r.betti_after) !=
                    transitions::euler_characteristic(r.betti_before) - 2 * r.N;
        if (r.name == "schoen") failures += counts.k != 24 || counts.c != 101;
        if (r.name == "tian_yau") {
            failures += counts.k != 14 || counts.c != 1;
            failures += r.hodge_after.h11 != 0 || r.hodge_after.h21 != 24 || r.betti_after.b3 != 50;
        }
    }
    expect(out, "catalog_size", static_cast<double>(transitions::example_catalog().size()), Compare::eq, 4);
    expect(out, "round_trip_failures", static_cast<double>(failures), Compare::eq, 0);
}

// ---- 11 ----
void friedman(const Ctx& ctx, Sink& out) {
    const auto ty = tian_yau_classes();
    const auto r = transitions::friedman_witness(ty);
    transitions::ClassMatrix ty_gauss;
    for (const auto& row : ty) {
        ty_gauss.emplace_back(row.begin(), row.end());
    }
    expect(out, "tian_yau_witness_verified",
           r.feasible && transitions::verify_witness(ty_gauss, r.lambda) ? 1.0 : 0.0, Compare::eq, 1);
    const auto single = transitions::friedman_witness(transitions::RationalClassMatrix{{Rational(3), Rational(-1)}});
    expect(out, "single_nonzero_infeasible", single.feasible ? 0.0 : 1.0, Compare::eq, 1);
    const BruteForceAudit audit = friedman_bruteforce_audit(ctx.full() ? 4 : 3, 3);
    expect(out, "bruteforce_disagreements", static_cast<double>(audit.disagreements), Compare::eq, 0);
    expect(out, "bruteforce_unsound", static_cast<double>(audit.unsound), Compare::eq, 0);
    expect(out, "bruteforce_cases", static_cast<double>(audit.cases), Compare::gt, 0);
}

// ---- 12 ----
void dwork(const Ctx& ctx, Sink& out) {
    const auto pts = transitions::dwork_singular_points();
    expect(out, "count", static_cast<double>(pts.size()), Compare::eq, 125);
    const bool has_diagonal =
        std::find(pts.begin(), pts.end(), transitions::ProjectivePoint5{{0, 0, 0, 0, 0}}) != pts.end();
    expect(out, "contains_11111", has_diagonal ? 1.0 : 0.0, Compare::eq, 1);
    const poly::Polynomial4 P = poly::dwork_affine();
    long odp = 0;
    long exact_ok = 0;
    double worst_value = 0.0;
    for (const auto& p : pts) {
        const auto chk = transitions::dwork_check(p);
        worst_value = std::max({worst_value, chk.value_abs, chk.gradient_max});
        odp += transitions::verify_odp(P, transitions::affine_point(p)).is_odp;
        if (ctx.full()) {
            const auto ex = transitions::exact_odp_check(p);
            exact_ok += ex.value_zero && ex.gradient_zero && ex.hessian_nonzero;
        }
    }
    expect(out, "max_value_or_gradient", worst_value, Compare::lt, 1e-10);
    expect(out, "odp_certified", static_cast<double>(odp), Compare::eq, 125);
    if (ctx.full()) expect(out, "exact_certified", static_cast<double>(exact_ok), Compare::eq, 125);
    long smooth = 0;
    double min_grad = INFINITY;
    for (int i = 0; i < 200; ++i) {
        const auto z = transitions::random_dwork_point(ctx.seed * 7919ULL + 12000ULL + i);
        const auto d = transitions::verify_odp(P, z);
        smooth += d.status == transitions::OdpStatus::not_singular;
        min_grad = std::min(min_grad, d.gradient_norm);
    }
    expect(out, "random_not_singular", static_cast<double>(smooth), Compare::eq, 200);
    expect(out, "random_min_gradient", min_grad, Compare::gt, 1e-3);
}

struct Criterion {
    int id;
    const char* title;
    double limit;
    void (*body)(const Ctx&, Sink&);
};

constexpr Criterion kCriteria[] = {
    {1, "quintic Hodge diamond", 1.0, &quintic_diamond},
    {2, "K3 diamond and moduli counts", 1.0, &k3_and_moduli},
    {3, "ODE and Monge-Ampere certification", 30.0, &ode_ma},
    {4, "resolved small-tau limit of f'", 5.0, &small_tau},
    {5, "asymptotic deviations", 30.0, &asymptotics},
    {6, "potential-level continuity", 60.0, &potential_continuity},
    {7, "vanishing-cycle integral", 60.0, &cycle_integral},
    {8, "special Lagrangian calibration", 10.0, &calibration},
    {9, "first-order deformation form", 10.0, &deformation_form},
    {10, "topology bookkeeping", 1.0, &topology},
    {11, "smoothing-criterion solver", 30.0, &friedman},
    {12, "Dwork nodes", 60.0, &dwork},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_done) {
    const Ctx ctx{opts.profile, opts.seed};
    std::vector<CriterionResult> results;
    for (const Criterion& c : kCriteria) {
        CriterionResult r;
        r.id = c.id;
        r.title = c.title;
        r.time_limit = c.limit;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.body(ctx, r.assertions);
        } catch (const std::exception& e) {
            r.assertions.push_back(make_assertion(std::string("exception: ") + e.what(), 1.0,
                                                  Compare::eq, 0.0));
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (opts.check_runtime) {
            r.assertions.push_back(make_assertion("runtime_s", r.seconds, Compare::lt, c.limit));
        }
        if (on_done) on_done(r);
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace conifold::lab
