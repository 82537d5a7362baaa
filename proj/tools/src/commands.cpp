#include <conifold_lab/commands.hpp>

#include <conifold_lab/acceptance.hpp>
#include <conifold_lab/checks.hpp>

#include <conifold/cdlo_metrics.hpp>
#include <conifold/error.hpp>
#include <conifold/hodge_euler.hpp>
#include <conifold/slag.hpp>
#include <conifold/transitions.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace conifold::lab {

namespace {

using core::cplx;
using metrics::Kind;
using metrics::PotentialFamily;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json bigint_json(const BigInt& x) {
    if (x.fits_slong_p()) return static_cast<long long>(x.get_si());
    return x.get_str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) { row(header); }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_field(fields[i]);
        }
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

std::vector<double> make_grid(const std::string& kind, double lo, double hi, int n) {
    if (n <= 0) throw UsageError("grid needs at least one point (--points)");
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi || (n > 1 && lo == hi)) {
        throw UsageError("empty grid: need tau-min < tau-max");
    }
    std::vector<double> g(n);
    if (kind == "log") {
        if (!(lo > 0.0)) throw UsageError("log grid needs tau-min > 0");
        for (int i = 0; i < n; ++i) {
            g[i] = n == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
        }
    } else if (kind == "linear") {
        for (int i = 0; i < n; ++i) g[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    } else {
        throw UsageError("unknown grid '" + kind + "' (expected log or linear)");
    }
    return g;
}

// ---- hodge ------------------------------------------------------------------

void run_hodge(const RunConfig& cfg, Tolerances&, Report& rep) {
    rep.inputs["n"] = cfg.n;
    rep.inputs["d"] = cfg.d;
    const hodge::HypersurfaceSpec spec(cfg.n, cfg.d);
    const hodge::HodgeDiamond hd = hodge::hodge_diamond(spec);
    const int dim = hd.dim;
    Json rows = Json::array();
    long conj = 0, serre = 0, lefschetz = 0, negative = 0;
    for (int p = 0; p <= dim; ++p) {
        Json row = Json::array();
        for (int q = 0; q <= dim; ++q) {
            row.push_back(bigint_json(hd(p, q)));
            conj += hd(p, q) != hd(q, p);
            serre += hd(p, q) != hd(dim - p, dim - q);
            if (p + q != dim) lefschetz += hd(p, q) != (p == q ? 1 : 0);
            negative += sgn(hd(p, q)) < 0;
        }
        rows.push_back(row);
    }
    Json chi = Json::array();
    for (int p = 0; p <= dim; ++p) chi.push_back(bigint_json(hodge::chi_hypersurface_omega_p(spec, p, 0)));
    rep.results["diamond"] = Json{{"dim", dim}, {"h", rows}};
    rep.results["chi_omega_p"] = chi;
    rep.results["calabi_yau"] = spec.calabi_yau();
    rep.results["moduli_dimension"] = bigint_json(hodge::moduli_dimension(cfg.n, cfg.d));
    if (dim >= 2) {
        rep.results["h11"] = bigint_json(hd(1, 1));
        rep.results["h21"] = bigint_json(hd(dim - 1, 1));
    }
    const int n = cfg.n;
    const int sign = n % 2 == 0 ? 1 : -1;
    const BigInt closed = BigInt(-1) - sign * (n + 1) * binomial_poly(BigInt(cfg.d), n) +
                          sign * binomial_poly(BigInt(2 * cfg.d - 1), n);
    const bool closed_ok = closed == hodge::chi_hypersurface_omega_p(spec, 1, 0);
    rep.add(make_assertion("hodge.conjugation_symmetry_violations", conj, Compare::eq, 0));
    rep.add(make_assertion("hodge.serre_duality_violations", serre, Compare::eq, 0));
    rep.add(make_assertion("hodge.lefschetz_violations", lefschetz, Compare::eq, 0));
    rep.add(make_assertion("hodge.negative_entries", negative, Compare::eq, 0));
    rep.add(make_assertion("hodge.chi_omega_1_closed_form_mismatch", closed_ok ? 0 : 1, Compare::eq, 0));
}

// ---- metric -----------------------------------------------------------------

PotentialFamily family_from(const RunConfig& cfg) {
    const Kind k = metrics::parse_kind(cfg.family);
    if (k == Kind::cone) return PotentialFamily::cone();
    if (k == Kind::smoothed) return PotentialFamily::smoothed(cfg.t);
    return PotentialFamily::resolved(cfg.a);
}

double family_scale(const PotentialFamily& f) {
    switch (f.kind) {
        case Kind::smoothed: return std::abs(f.t);
        case Kind::resolved: return f.a * f.a * f.a;
        default: return 1.0;
    }
}

double default_tau_min(const PotentialFamily& f) {
    if (f.kind == Kind::smoothed) return 1.01 * std::abs(f.t);
    return 1e-2 * family_scale(f);
}

metrics::HermitianHessian sample_hessian(const PotentialFamily& f, double tau, std::uint64_t seed,
                                         int salt) {
    if (f.kind == Kind::resolved) {
        // |W|^2 (1 + |X|^2) = tau with |X| <= 1 drawn inside the sampler.
        const core::ResolvedPoint q = metrics::sample_resolved_point(1.0, salt % 2, seed);
        const double h = 1.0 + std::norm(q.u[salt % 2 == 0 ? 1 : 0]);
        const double r = std::sqrt(tau / h);
        return metrics::hermitian_hessian(
            f, core::ResolvedPoint::make(q.u[0], q.u[1], q.w[0] * r, q.w[1] * r));
    }
    return metrics::hermitian_hessian(f, metrics::sample_fiber_point(f, tau, seed));
}

std::string param_text(const PotentialFamily& f) { return format_double(f.parameter()); }

void run_metric(const RunConfig& cfg, Tolerances& tol, Report& rep) {
    const PotentialFamily fam = family_from(cfg);
    rep.inputs["family"] = fam.name();
    if (fam.kind == Kind::smoothed) rep.inputs["t"] = complex_json(fam.t);
    if (fam.kind == Kind::resolved) rep.inputs["a"] = fam.a;
    rep.inputs["sweep"] = cfg.sweep.empty() ? "none" : cfg.sweep;
    rep.inputs["grid"] = cfg.grid;
    rep.inputs["points"] = cfg.points;
    rep.inputs["seed"] = cfg.seed;

    const std::string& sweep = cfg.sweep;
    if (!sweep.empty() && sweep != "profile" && sweep != "deviation" && sweep != "convergence" &&
        sweep != "ma") {
        throw UsageError("unknown sweep '" + sweep + "' (profile, deviation, convergence, ma)");
    }
    const bool csv = cfg.format == Format::csv;
    if (csv && sweep.empty()) throw UsageError("--format csv requires --sweep");

    if (sweep == "convergence") {
        if (fam.kind == Kind::cone) throw UsageError("convergence sweep needs smoothed or resolved");
        const std::vector<double> params =
            cfg.params.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.125} : cfg.params;
        const double tau0 = cfg.tau_min.value_or(1.0);
        const double tau1 = cfg.tau_max.value_or(10.0);
        if (cfg.points < 2) throw UsageError("convergence sweep needs --points >= 2");
        if (!(tau0 < tau1)) throw UsageError("empty grid: need tau-min < tau-max");
        rep.inputs["params"] = params;
        rep.inputs["tau_min"] = tau0;
        rep.inputs["tau_max"] = tau1;
        const auto sups = metrics::potential_convergence_sup(fam.kind, params, tau0, tau1, cfg.points);
        CsvWriter w({"family", "param", "tau0", "tau1", "sup"});
        Json rows = Json::array();
        long bad = 0;
        for (std::size_t i = 0; i < params.size(); ++i) {
            w.row({fam.name(), format_double(params[i]), format_double(tau0), format_double(tau1),
                   format_double(sups[i])});
            rows.push_back(Json{{"param", params[i]}, {"sup", sups[i]}});
            if (i > 0 && params[i] < params[i - 1]) bad += !(sups[i] < sups[i - 1]);
        }
        rep.results["rows"] = rows;
        rep.check(tol, "metric.convergence_non_decreasing_steps", static_cast<double>(bad), Compare::eq, 0);
        if (csv) rep.csv = w.str();
        return;
    }

    double lo = cfg.tau_min.value_or(default_tau_min(fam));
    double hi = cfg.tau_max.value_or(1e3 * family_scale(fam));
    if (sweep == "deviation") {
        if (fam.kind == Kind::cone) throw UsageError("deviation sweep needs smoothed or resolved");
        lo = cfg.tau_min.value_or(std::max(metrics::asymptotic_threshold(fam), 1e2 * family_scale(fam)));
        hi = cfg.tau_max.value_or(1e6 * family_scale(fam));
    }
    rep.inputs["tau_min"] = lo;
    rep.inputs["tau_max"] = hi;
    const std::vector<double> grid = make_grid(cfg.grid, lo, hi, cfg.points);
    for (double tau : grid) {
        if (tau < fam.domain_min() || (fam.kind == Kind::cone && tau <= 0.0)) {
            throw UsageError("grid leaves the family domain (smoothed needs tau >= |t|)");
        }
        if (sweep == "deviation" && tau < metrics::asymptotic_threshold(fam)) {
            throw UsageError("deviation sweep needs tau >= 10 max(|t|, a^3)");
        }
    }

    const double cal = metrics::calibrate_ma(fam);
    rep.results["family"] = fam.name();
    rep.results["parameter"] = fam.parameter();
    rep.results["c"] = fam.c();
    rep.results["ma_calibrated"] = cal;
    rep.results["ma_expected"] = metrics::expected_ma_constant(fam);
    rep.check(tol, "metric.ma_constant_rel_error",
              std::abs(cal / metrics::expected_ma_constant(fam) - 1.0), Compare::lt, 1e-10);

    const std::vector<std::string> columns = {"family", "param", "tau", "sample", "f", "fp", "fpp",
                                              "ode_residual", "ma_residual", "deviation"};
    CsvWriter w(columns);
    Json rows = Json::array();
    double worst_ode = 0.0, worst_ma = 0.0;
    long nonfinite = 0;
    const int per_tau = sweep == "ma" ? 4 : 1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double tau = grid[i];
        const bool want_f = sweep == "profile";
        const bool want_dev = sweep == "deviation" ||
                              (sweep == "profile" && fam.kind != Kind::cone &&
                               tau >= metrics::asymptotic_threshold(fam));
        const metrics::PotentialSample s =
            want_f ? metrics::potential_value(fam, tau)
                   : [&] {
                         metrics::PotentialSample x;
                         const auto d = metrics::potential_derivatives(fam, tau);
                         x.tau = tau;
                         x.fp = d.fp;
                         x.fpp = d.fpp;
                         return x;
                     }();
        const double ode = metrics::ode_residual(fam, tau);
        worst_ode = std::max(worst_ode, ode);
        const double dev = want_dev ? metrics::asymptotic_deviation(fam, tau) : 0.0;
        nonfinite += !std::isfinite(dev);
        for (int k = 0; k < per_tau; ++k) {
            const std::uint64_t seed = cfg.seed * 1000003ULL + i * 16 + k;
            const double ma = metrics::monge_ampere_residual(
                sample_hessian(fam, tau, seed, static_cast<int>(i) + k), cal);
            worst_ma = std::max(worst_ma, ma);
            Json row{{"tau", tau}, {"sample", k}, {"fp", s.fp}, {"fpp", s.fpp}, {"ode_residual", ode}, {"ma_residual", ma}};
            if (want_f) row["f"] = s.f;
            if (want_dev) row["deviation"] = dev;
            rows.push_back(row);
            w.row({fam.name(), param_text(fam), format_double(tau), std::to_string(k), want_f ? format_double(s.f) : "",
                   format_double(s.fp), format_double(s.fpp), format_double(ode), format_double(ma),
                   want_dev ? format_double(dev) : ""});
        }
    }
    rep.results["ode_residual_max"] = worst_ode;
    rep.results["ma_residual_max"] = worst_ma;
    rep.results["rows"] = rows;
    rep.check(tol, "metric.ode_residual", worst_ode, Compare::lt, 1e-8);
    rep.check(tol, "metric.ma_residual", worst_ma, Compare::lt, 1e-7);
    if (sweep == "deviation") {
        rep.check(tol, "metric.deviation_nonfinite", static_cast<double>(nonfinite), Compare::eq, 0);
    }
    if (csv) rep.csv = w.str();
}

// ---- slag -------------------------------------------------------------------

double rel_error(cplx value, cplx exact) { return std::abs(value - exact) / std::abs(exact); }

void run_slag(const RunConfig& cfg, Tolerances& tol, Report& rep) {
    rep.inputs["t"] = complex_json(cfg.t);
    rep.inputs["resolution"] = cfg.resolution;
    rep.inputs["nodes"] = cfg.nodes;
    rep.inputs["seed"] = cfg.seed;
    if (cfg.nodes < 1) throw UsageError("--nodes must be positive");
    const auto grid = slag::sample_vanishing_cycle(cfg.t, cfg.resolution);
    const cplx integral = slag::integrate_volume_form(grid);
    const cplx exact = slag::exact_cycle_integral(cfg.t);
    const double err = rel_error(integral, exact);
    rep.results["t"] = complex_json(cfg.t);
    rep.results["resolution"] = cfg.resolution;
    rep.results["integral_re"] = integral.real();
    rep.results["integral_im"] = integral.imag();
    rep.results["exact_re"] = exact.real();
    rep.results["exact_im"] = exact.imag();
    rep.results["rel_error"] = err;
    rep.check(tol, "slag.rel_error", err, Compare::lt, 1e-4);

    const cplx stitched = slag::integrate_volume_form(grid, slag::Route::stitched_chart);
    rep.results["stitched_rel_diff"] = rel_error(stitched, integral);
    rep.check(tol, "slag.stitched_agreement", rel_error(stitched, integral), Compare::lt, 1e-12);

    const int coarse = cfg.resolution / 2;
    if (coarse >= 8 && coarse % 2 == 0) {
        const double coarse_err =
            rel_error(slag::integrate_volume_form(slag::sample_vanishing_cycle(cfg.t, coarse)), exact);
        const double order = std::log2(coarse_err / err);
        rep.results["observed_order"] = order;
        rep.check(tol, "slag.observed_order", order, Compare::ge, 2.0);
    }

    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::size_t> pick(0, grid.nodes.size() - 1);
    double worst = 0.0, worst_lag = 0.0;
    for (int i = 0; i < cfg.nodes; ++i) {
        const auto& node = grid.nodes[pick(rng)];
        worst = std::max(worst, slag::calibration_residual(cfg.t, node.z, node.frame));
        worst_lag = std::max(worst_lag, slag::lagrangian_residual(node.frame));
    }
    const auto& node = grid.nodes[pick(rng)];
    const double control =
        slag::calibration_residual(cfg.t, node.z, slag::rotate_first_leg(node.frame, std::numbers::pi / 4));
    rep.results["calibration_residual_max"] = worst;
    rep.results["lagrangian_residual_max"] = worst_lag;
    rep.results["negative_control"] = control;
    rep.check(tol, "slag.calibration_residual", worst, Compare::lt, 1e-10);
    rep.check(tol, "slag.lagrangian_residual", worst_lag, Compare::lt, 1e-10);
    rep.check(tol, "slag.negative_control", control, Compare::gt, 1e-2);
}

// ---- transition -------------------------------------------------------------

Json record_json(const transitions::TransitionRecord& r) {
    auto hodge = [](const transitions::HodgePair& h) { return Json{{"h11", h.h11}, {"h21", h.h21}}; };
    auto betti = [](const transitions::Betti& b) { return Json::array({b.b1, b.b2, b.b3}); };
    Json j;
    if (!r.name.empty()) j["name"] = r.name;
    j["N"] = r.N;
    j["k"] = r.k;
    j["c"] = r.c;
    j["hodge_before"] = hodge(r.hodge_before);
    j["hodge_after"] = hodge(r.hodge_after);
    j["betti_before"] = betti(r.betti_before);
    j["betti_after"] = betti(r.betti_after);
    j["euler_before"] = transitions::euler_characteristic(r.betti_before);
    j["euler_after"] = transitions::euler_characteristic(r.betti_after);
    j["kahler_resolution"] = r.kahler_resolution;
    return j;
}

void round_trip_checks(const transitions::TransitionRecord& r, const std::string& prefix, Report& rep) {
    const auto counts = transitions::infer_counts(r.hodge_before, r.hodge_after, r.N);
    const auto again =
        transitions::apply_topology_change(r.hodge_before, r.betti_before, r.N, counts.k, counts.c);
    const bool ok = counts.k == r.k && counts.c == r.c && again.hodge_after == r.hodge_after &&
                    again.betti_after == r.betti_after;
    rep.add(make_assertion(prefix + "round_trip", ok ? 0 : 1, Compare::eq, 0));
    rep.add(make_assertion(prefix + "euler_drop_minus_2N",
                           static_cast<double>(transitions::euler_characteristic(r.betti_before) -
                                               transitions::euler_characteristic(r.betti_after) - 2 * r.N),
                           Compare::eq, 0));
}

void run_transition(const RunConfig& cfg, Tolerances&, Report& rep) {
    const bool any = cfg.h11 || cfg.h21 || cfg.h11_after || cfg.h21_after || cfg.N || cfg.k || cfg.c ||
                     cfg.b1 || cfg.b2 || cfg.b3;
    if (!any) {
        rep.inputs["mode"] = "catalog";
        Json list = Json::array();
        for (const auto& r : transitions::example_catalog()) {
            list.push_back(record_json(r));
            round_trip_checks(r, "transition." + r.name + ".", rep);
        }
        rep.results["catalog"] = list;
        return;
    }
    if (!cfg.h11 || !cfg.h21 || !cfg.N) throw UsageError("transition needs --h11, --h21 and --N");
    const transitions::HodgePair before{*cfg.h11, *cfg.h21};
    transitions::Betti betti = transitions::betti_from_hodge(before);
    if (cfg.b1) betti.b1 = *cfg.b1;
    if (cfg.b2) betti.b2 = *cfg.b2;
    if (cfg.b3) betti.b3 = *cfg.b3;
    rep.inputs["h11"] = before.h11;
    rep.inputs["h21"] = before.h21;
    rep.inputs["betti"] = Json::array({betti.b1, betti.b2, betti.b3});
    rep.inputs["N"] = *cfg.N;
    try {
        long k, c;
        if (cfg.h11_after || cfg.h21_after) {
            if (!cfg.h11_after || !cfg.h21_after) {
                throw UsageError("inferring counts needs both --h11-after and --h21-after");
            }
            if (cfg.k || cfg.c) throw UsageError("give either --k/--c or the after-state, not both");
            rep.inputs["mode"] = "infer";
            rep.inputs["h11_after"] = *cfg.h11_after;
            rep.inputs["h21_after"] = *cfg.h21_after;
            const auto counts = transitions::infer_counts(before, {*cfg.h11_after, *cfg.h21_after}, *cfg.N);
            k = counts.k;
            c = counts.c;
        } else {
            if (!cfg.k || !cfg.c) throw UsageError("transition needs --k and --c (or the after-state)");
            rep.inputs["mode"] = "apply";
            rep.inputs["k"] = *cfg.k;
            rep.inputs["c"] = *cfg.c;
            k = *cfg.k;
            c = *cfg.c;
        }
        const auto r = transitions::apply_topology_change(before, betti, *cfg.N, k, c);
        rep.results["record"] = record_json(r);
        round_trip_checks(r, "transition.", rep);
    } catch (const TransitionError& e) {
        rep.results["error"] = Json{{"equation", e.equation()}, {"message", e.what()}};
        rep.add(make_assertion("transition: " + e.equation(), 1, Compare::eq, 0));
    }
}

// ---- dwork ------------------------------------------------------------------

void run_dwork(const RunConfig& cfg, Tolerances& tol, Report& rep) {
    rep.inputs["exact"] = cfg.exact;
    rep.inputs["random_points"] = cfg.random_points;
    rep.inputs["seed"] = cfg.seed;
    if (cfg.random_points < 0) throw UsageError("--random must be non-negative");
    const auto pts = transitions::dwork_singular_points();
    const poly::Polynomial4 P = poly::dwork_affine();
    std::vector<transitions::OdpDiagnostics> diag(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) diag[i] = transitions::verify_odp(P, transitions::affine_point(pts[i]));
    Json list = Json::array();
    double worst = 0.0, min_det = INFINITY;
    long odp = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto chk = transitions::dwork_check(pts[i]);
        worst = std::max({worst, chk.value_abs, chk.gradient_max});
        odp += diag[i].is_odp;
        min_det = std::min(min_det, diag[i].hessian_det_abs);
        list.push_back(Json::array({pts[i].a[0], pts[i].a[1], pts[i].a[2], pts[i].a[3], pts[i].a[4]}));
    }
    const bool diagonal =
        std::find(pts.begin(), pts.end(), transitions::ProjectivePoint5{{0, 0, 0, 0, 0}}) != pts.end();
    rep.results["raw_tuples"] = transitions::dwork_raw_tuples().size();
    rep.results["count"] = pts.size();
    rep.results["points"] = list;
    rep.results["max_value_or_gradient"] = worst;
    rep.results["min_hessian_det"] = min_det;
    rep.results["odp_certified"] = odp;
    rep.add(make_assertion("dwork.raw_tuples", static_cast<double>(transitions::dwork_raw_tuples().size()),
                           Compare::eq, 625));
    rep.add(make_assertion("dwork.count", static_cast<double>(pts.size()), Compare::eq, 125));
    rep.add(make_assertion("dwork.contains_11111", diagonal ? 1 : 0, Compare::eq, 1));
    rep.check(tol, "dwork.max_value_or_gradient", worst, Compare::lt, 1e-10);
    rep.add(make_assertion("dwork.odp_certified", static_cast<double>(odp), Compare::eq, 125));
    if (cfg.exact) {
        long ok = 0;
        for (const auto& p : pts) {
            const auto e = transitions::exact_odp_check(p);
            ok += e.value_zero && e.gradient_zero && e.hessian_nonzero;
        }
        rep.results["exact_certified"] = ok;
        rep.add(make_assertion("dwork.exact_certified", static_cast<double>(ok), Compare::eq, 125));
    }
    long smooth = 0;
    double min_grad = INFINITY;
    for (int i = 0; i < cfg.random_points; ++i) {
        const auto d = transitions::verify_odp(P, transitions::random_dwork_point(cfg.seed * 7919ULL + i));
        smooth += d.status == transitions::OdpStatus::not_singular;
        min_grad = std::min(min_grad, d.gradient_norm);
    }
    rep.results["random_not_singular"] = smooth;
    if (cfg.random_points > 0) {
        rep.results["random_min_gradient"] = min_grad;
        rep.add(make_assertion("dwork.random_not_singular", static_cast<double>(smooth), Compare::eq,
                               cfg.random_points));
        rep.check(tol, "dwork.random_min_gradient", min_grad, Compare::gt, 1e-3);
    }
}

// ---- friedman ---------------------------------------------------------------

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

Rational parse_rational(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty() || s == "+" || s == "-") throw UsageError("empty number in class matrix");
    const auto dot = s.find('.');
    try {
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("digits");
            if (digits[0] == '+') digits.erase(0, 1);
            BigInt den = 1;
            for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
            Rational q(BigInt(digits), den);
            q.canonicalize();
            return q;
        }
        std::string t = s[0] == '+' ? s.substr(1) : s;
        Rational q(t);
        if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw UsageError("cannot parse '" + s + "' as an exact rational");
    }
}

transitions::GaussianRational parse_gaussian(const std::string& raw) {
    const std::string s = trim(raw);
    if (s.empty() || s.back() != 'i') return {parse_rational(s), Rational(0)};
    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
            split = i;
            break;
        }
    }
    auto imag = [](const std::string& part) {
        const std::string p = trim(part);
        if (p.empty() || p == "+") return Rational(1);
        if (p == "-") return Rational(-1);
        return parse_rational(p);
    };
    if (split == std::string::npos) return {Rational(0), imag(body)};
    return {parse_rational(body.substr(0, split)), imag(body.substr(split))};
}

transitions::ClassMatrix classes_from_json(const Json& j) {
    if (!j.is_array()) throw UsageError("class matrix JSON must be an array of rows");
    transitions::ClassMatrix m;
    for (const auto& row : j) {
        if (!row.is_array()) throw UsageError("class matrix rows must be arrays");
        std::vector<transitions::GaussianRational> r;
        for (const auto& x : row) {
            if (x.is_string()) {
                r.push_back(parse_gaussian(x.get<std::string>()));
            } else if (x.is_number_integer()) {
                r.push_back(transitions::GaussianRational(Rational(BigInt(x.dump()))));
            } else {
                throw UsageError("class entries must be integers or strings such as \"1/2\" or \"1+2i\"");
            }
        }
        m.push_back(std::move(r));
    }
    return m;
}

transitions::ClassMatrix classes_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open class matrix file '" + path + "'");
    transitions::ClassMatrix m;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::vector<transitions::GaussianRational> row;
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_gaussian(cell));
        m.push_back(std::move(row));
    }
    return m;
}

transitions::ClassMatrix example_classes(const std::string& name, std::optional<bool>& expected) {
    transitions::ClassMatrix m;
    if (name == "tian-yau") {
        for (const auto& row : tian_yau_classes()) m.emplace_back(row.begin(), row.end());
        expected = true;
    } else if (name == "single") {
        m = {{Rational(1), Rational(2)}};
        expected = false;
    } else if (name == "zero") {
        m = {{Rational(0)}};
        expected = true;
    } else if (name == "basis2") {
        m = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
        expected = false;
    } else {
        throw UsageError("unknown example '" + name + "' (tian-yau, single, zero, basis2)");
    }
    return m;
}

void run_friedman(const RunConfig& cfg, Tolerances&, Report& rep) {
    const int sources = !cfg.classes_file.empty() + !cfg.classes_json.empty() + !cfg.example.empty();
    if (sources != 1) throw UsageError("friedman needs exactly one of --classes, --json, --example");
    std::optional<bool> expected;
    transitions::ClassMatrix m;
    if (!cfg.example.empty()) {
        rep.inputs["example"] = cfg.example;
        m = example_classes(cfg.example, expected);
    } else if (!cfg.classes_json.empty()) {
        Json j;
        try {
            j = Json::parse(cfg.classes_json);
        } catch (const Json::parse_error& e) {
            throw UsageError(std::string("invalid --json: ") + e.what());
        }
        m = classes_from_json(j);
    } else {
        m = classes_from_csv(cfg.classes_file);
    }
    if (m.empty()) throw UsageError("class matrix has no rows");
    const std::size_t cols = m.front().size();
    if (cols == 0) throw UsageError("class vectors must have at least one coordinate");
    Json rows = Json::array();
    for (const auto& row : m) {
        if (row.size() != cols) throw UsageError("class vectors have different lengths");
        Json r = Json::array();
        for (const auto& x : row) r.push_back(transitions::to_string(x));
        rows.push_back(r);
    }
    rep.inputs["classes"] = rows;
    const auto res = transitions::friedman_witness(m);
    rep.results["N"] = m.size();
    rep.results["m"] = cols;
    rep.results["feasible"] = res.feasible;
    rep.results["kernel_dimension"] = res.kernel_basis.size();
    if (res.feasible) {
        Json l = Json::array();
        for (const auto& x : res.lambda) l.push_back(transitions::to_string(x));
        rep.results["lambda"] = l;
        rep.results["s_used"] = res.s_used;
        rep.add(make_assertion("friedman.witness_verified",
                               transitions::verify_witness(m, res.lambda) ? 1 : 0, Compare::eq, 1));
    }
    if (expected) {
        rep.add(make_assertion("friedman.expected_feasibility", res.feasible == *expected ? 1 : 0,
                               Compare::eq, 1));
    }
}

// ---- verify-all -------------------------------------------------------------

void run_verify_all(const RunConfig& cfg, Tolerances&, Report& rep) {
    AcceptanceOptions opts;
    opts.profile = cfg.full ? Profile::full : Profile::fast;
    opts.seed = cfg.seed;
    opts.check_runtime = cfg.timings;
    rep.inputs["profile"] = cfg.full ? "full" : "fast";
    rep.inputs["seed"] = cfg.seed;
    Json list = Json::array();
    for (const auto& r : run_acceptance(opts)) {
        Json a = Json::array();
        for (const auto& x : r.assertions) {
            a.push_back(assertion_json(x));
            Assertion prefixed = x;
            prefixed.name = "criterion" + std::to_string(r.id) + "." + x.name;
            rep.add(prefixed);
        }
        list.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"assertions", a}});
        rep.timings.emplace_back("criterion" + std::to_string(r.id), r.seconds);
    }
    rep.results["criteria"] = list;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        const std::string re = comma == std::string::npos ? text : text.substr(0, comma);
        const double x = std::stod(re, &used);
        if (used != re.size()) throw std::invalid_argument(text);
        if (comma == std::string::npos) return {x, 0.0};
        const std::string im = text.substr(comma + 1);
        const double y = std::stod(im, &used);
        if (used != im.size()) throw std::invalid_argument(text);
        return {x, y};
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse '" + text + "' as a complex number (use x or x,y)");
    }
}

Report run(const RunConfig& cfg) {
    for (const auto& [name, value] : cfg.tolerances) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            throw UsageError("tolerance '" + name + "' must be positive");
        }
    }
    Tolerances tol(cfg.tolerances);
    Report rep;
    rep.command = cfg.command;
    rep.include_timings = cfg.timings;
    const Stopwatch clock;
    try {
        if (cfg.command == "hodge") {
            run_hodge(cfg, tol, rep);
        } else if (cfg.command == "metric") {
            run_metric(cfg, tol, rep);
        } else if (cfg.command == "slag") {
            run_slag(cfg, tol, rep);
        } else if (cfg.command == "transition") {
            run_transition(cfg, tol, rep);
        } else if (cfg.command == "dwork") {
            run_dwork(cfg, tol, rep);
        } else if (cfg.command == "friedman") {
            run_friedman(cfg, tol, rep);
        } else if (cfg.command == "verify-all") {
            run_verify_all(cfg, tol, rep);
        } else {
            throw UsageError("unknown subcommand '" + cfg.command + "'");
        }
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    if (cfg.format == Format::csv && rep.csv.empty()) {
        throw UsageError("--format csv is only available for metric sweeps");
    }
    const auto unused = tol.unused();
    if (!unused.empty()) throw UsageError("tolerance '" + unused.front() + "' is not used by " + cfg.command);
    rep.timings.emplace_back("total", clock.seconds());
    return rep;
}

int exit_status(const Report& report) { return report.passed() ? 0 : 1; }

}  // namespace conifold::lab
