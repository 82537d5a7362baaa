#include <conifold/cdlo_metrics.hpp>

#include <conifold/error.hpp>
#include <conifold/parallel.hpp>

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace conifold::metrics {

namespace {

constexpr double kInvSqrt6 = 0.40824829046386301637;

// ---- smoothing at |t| = 1, in terms of sigma = tau / |t| ----

struct Hyperbolic {
    double lambda;  // acosh sigma
    double mu;      // sinh lambda
};

Hyperbolic hyperbolic(double sigma) {
    const double mu = std::sqrt((sigma - 1.0) * (sigma + 1.0));
    return {std::log1p((sigma - 1.0) + mu), mu};
}

// (sinh 2l - 2l) / 2
double g_of_lambda(double l) {
    if (l < 1.0) {
        const double x = 2.0 * l;
        const double x2 = x * x;
        double term = x * x2 / 6.0;
        double sum = term;
        for (int k = 2; k < 30; ++k) {
            term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
            sum += term;
            if (term < 1e-18 * sum) break;
        }
        return 0.5 * sum;
    }
    return 0.5 * (std::sinh(2.0 * l) - 2.0 * l);
}

double g_of_sigma(double sigma, const Hyperbolic& h) {
    if (h.lambda < 1.0) return g_of_lambda(h.lambda);
    return h.mu * sigma - h.lambda;
}

double smoothed_fp1(double sigma) {
    if (sigma == 1.0) return std::cbrt(2.0 / 3.0);
    const Hyperbolic h = hyperbolic(sigma);
    return std::cbrt(g_of_sigma(sigma, h)) / h.mu;
}

double smoothed_fpp1(double sigma) {
    const double limit = -(2.0 / 15.0) / std::pow(2.0 / 3.0, 2.0 / 3.0);
    if (sigma == 1.0) return limit;
    const Hyperbolic h = hyperbolic(sigma);
    const double l = h.lambda;
    const double g = g_of_sigma(sigma, h);
    double numer;
    if (l < 0.05) {
        const double l2 = l * l;
        numer = l2 * l2 * l *
                (-2.0 / 15.0 +
                 l2 * (-11.0 / 315.0 + l2 * (-17.0 / 3780.0 + l2 * (-461.0 / 1247400.0))));
    } else {
        numer = (2.0 / 3.0) * h.mu * h.mu * h.mu - g * sigma;
    }
    return numer / (std::pow(g, 2.0 / 3.0) * h.mu * h.mu * h.mu);
}

double smoothed_f1(double sigma, const quad::Options& opts, double* err) {
    const double lmax = hyperbolic(sigma).lambda;
    double total = 0.0;
    double error = 0.0;
    auto integrand = [](double l) { return std::cbrt(g_of_lambda(l)); };
    for (double lo = 0.0; lo < lmax; lo += 1.0) {
        const double hi = std::min(lmax, lo + 1.0);
        const quad::Result r = quad::integrate(integrand, lo, hi, opts);
        total += r.value;
        error += r.error;
    }
    if (err) *err = error;
    return total;
}

// f1' - sigma^{-1/3}
double smoothed_conical_remainder(double sigma) {
    if (sigma < 4.0) return smoothed_fp1(sigma) - 1.0 / std::cbrt(sigma);
    if (sigma > 1e120) return 0.0;
    const double m = std::sqrt(1.0 - 1.0 / (sigma * sigma));
    const double lambda = std::log(sigma) + std::log1p(m);
    const double q = m - lambda / (sigma * sigma);
    const double q3 = std::cbrt(q);
    const double a = q3 * q3 + q3 * m + m * m;
    return (m - lambda) / (std::pow(sigma, 7.0 / 3.0) * a * m);
}

// ---- resolution at a = 1 ----

double gamma_unit(double sigma) {
    if (sigma <= 0.0) return 0.0;
    double g;
    if (sigma < 1e-4) {
        g = sigma * kInvSqrt6;
    } else if (sigma > 1e30) {
        const double u = std::pow(sigma, 2.0 / 3.0);
        return u - 2.0 + 4.0 / u;
    } else {
        const double s2 = sigma * sigma;
        const std::complex<double> w =
            -16.0 + s2 + std::sqrt(std::complex<double>(s2 * s2 - 32.0 * s2, 0.0));
        const std::complex<double> z = std::pow(2.0, -1.0 / 3.0) * std::pow(w, 1.0 / 3.0);
        g = (-2.0 + z + 4.0 / z).real();
        if (!(g > 0.0)) g = sigma * kInvSqrt6;
    }
    const double s2 = sigma * sigma;
    for (int it = 0; it < 8; ++it) {
        const double fg = g * g * (g + 6.0) - s2;
        const double dg = g * (3.0 * g + 12.0);
        const double step = fg / dg;
        g -= step;
        if (std::abs(step) <= 1e-17 * g) break;
    }
    return g;
}

double resolved_fp1(double sigma) {
    if (sigma == 0.0) return kInvSqrt6;
    return gamma_unit(sigma) / sigma;
}

double resolved_fpp1(double sigma) {
    if (sigma == 0.0) return -1.0 / 72.0;
    const double g = gamma_unit(sigma);
    const double r = g / sigma;
    return -r * r / (3.0 * g + 12.0);
}

double resolved_f1(double sigma, const quad::Options& opts, double* err) {
    double total = 0.0;
    double error = 0.0;
    auto integrand = [](double s) { return resolved_fp1(s); };
    double lo = 0.0;
    double hi = std::min(sigma, 1.0);
    while (lo < sigma) {
        const quad::Result r = quad::integrate(integrand, lo, hi, opts);
        total += r.value;
        error += r.error;
        lo = hi;
        hi = std::min(sigma, 2.0 * hi);
    }
    if (err) *err = error;
    return total;
}

// (w - u) / s with w = gamma + 2, u = s^{2/3}, using w^3 - u^3 = 12 w - 16.
double resolved_delta(double sigma) {
    const double u = std::pow(sigma, 2.0 / 3.0);
    const double w = gamma_unit(sigma) + 2.0;
    return (12.0 * w - 16.0) / (w * w + w * u + u * u);
}

// f1' - sigma^{-1/3}
double resolved_conical_remainder(double sigma) {
    if (sigma < 1.0) return resolved_fp1(sigma) - 1.0 / std::cbrt(sigma);
    return (resolved_delta(sigma) - 2.0) / sigma;
}

double tail_integral(double (*remainder)(double), double sigma, const quad::Options& opts) {
    // s = sigma v^{-3} maps (0, 1] onto [sigma, inf).
    auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double s = sigma / (v * v * v);
        if (!std::isfinite(s) || s > 1e120) return 0.0;
        return remainder(s) * 3.0 * sigma / (v * v * v * v);
    };
    return quad::integrate(integrand, 0.0, 1.0, opts).value;
}

void require_tau(const PotentialFamily& fam, double tau) {
    if (!std::isfinite(tau)) throw DomainError("tau must be finite");
    switch (fam.kind) {
        case Kind::cone:
            if (!(tau > 0.0)) throw DomainError("cone: tau must be positive");
            break;
        case Kind::smoothed:
            if (!(tau >= fam.domain_min())) {
                throw DomainError("smoothed: tau must satisfy tau >= |t|");
            }
            break;
        case Kind::resolved:
            if (!(tau >= 0.0)) throw DomainError("resolved: tau must be non-negative");
            break;
    }
}

}  // namespace

double smoothed_tail_remainder(double sigma) { return smoothed_conical_remainder(sigma); }

double resolved_tail_remainder(double sigma) {
    if (sigma < 1.0) return resolved_fp1(sigma) - 1.0 / std::cbrt(sigma) + 2.0 / sigma;
    return resolved_delta(sigma) / sigma;
}

PotentialFamily PotentialFamily::cone() { return PotentialFamily{}; }

PotentialFamily PotentialFamily::smoothed(cplx t) {
    if (t == cplx{0.0, 0.0} || !std::isfinite(std::abs(t))) {
        throw DomainError("smoothed family requires t != 0");
    }
    PotentialFamily f;
    f.kind = Kind::smoothed;
    f.t = t;
    return f;
}

PotentialFamily PotentialFamily::resolved(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        throw DomainError("resolved family requires a > 0");
    }
    PotentialFamily f;
    f.kind = Kind::resolved;
    f.a = a;
    return f;
}

double PotentialFamily::domain_min() const {
    return kind == Kind::smoothed ? std::abs(t) : 0.0;
}

double PotentialFamily::parameter() const {
    switch (kind) {
        case Kind::smoothed: return std::abs(t);
        case Kind::resolved: return a;
        default: return 0.0;
    }
}

std::string PotentialFamily::name() const {
    switch (kind) {
        case Kind::smoothed: return "smoothed";
        case Kind::resolved: return "resolved";
        default: return "cone";
    }
}

Kind parse_kind(const std::string& name) {
    if (name == "cone") return Kind::cone;
    if (name == "smoothed") return Kind::smoothed;
    if (name == "resolved") return Kind::resolved;
    throw DomainError("unknown potential family '" + name + "'");
}

double cone_constant_for_amplitude(double amplitude) {
    return 16.0 * amplitude * amplitude * amplitude / 81.0;
}

double gamma_resolved(double tau, double a) {
    if (!(a > 0.0)) throw DomainError("gamma_resolved: a must be positive");
    if (!(tau >= 0.0)) throw DomainError("gamma_resolved: tau must be non-negative");
    return a * a * gamma_unit(tau / (a * a * a));
}

Derivatives potential_derivatives(const PotentialFamily& fam, double tau) {
    require_tau(fam, tau);
    switch (fam.kind) {
        case Kind::cone: {
            const double c = std::cbrt(tau);
            return {1.0 / c, -1.0 / (3.0 * tau * c)};
        }
        case Kind::smoothed: {
            const double T = std::abs(fam.t);
            const double s = tau / T;
            return {smoothed_fp1(s) / std::cbrt(T), smoothed_fpp1(s) / (T * std::cbrt(T))};
        }
        case Kind::resolved: {
            const double a = fam.a;
            const double s = tau / (a * a * a);
            return {resolved_fp1(s) / a, resolved_fpp1(s) / (a * a * a * a)};
        }
    }
    return {};
}

PotentialSample potential_value(const PotentialFamily& fam, double tau, const quad::Options& opts) {
    const Derivatives d = potential_derivatives(fam, tau);
    PotentialSample out;
    out.tau = tau;
    out.fp = d.fp;
    out.fpp = d.fpp;
    switch (fam.kind) {
        case Kind::cone:
            out.f = 1.5 * std::pow(tau, 2.0 / 3.0);
            break;
        case Kind::smoothed: {
            const double T = std::abs(fam.t);
            const double scale = std::pow(T, 2.0 / 3.0);
            double err = 0.0;
            out.f = scale * smoothed_f1(tau / T, opts, &err);
            out.f_error = scale * err;
            break;
        }
        case Kind::resolved: {
            const double a2 = fam.a * fam.a;
            double err = 0.0;
            out.f = a2 * resolved_f1(tau / (a2 * fam.a), opts, &err);
            out.f_error = a2 * err;
            break;
        }
    }
    return out;
}

bool positive(const PotentialFamily& fam, double tau, const Derivatives& d) {
    if (!(d.fp > 0.0)) return false;
    if (fam.kind == Kind::resolved) {
        const double a2 = fam.a * fam.a;
        return 4.0 * a2 + tau * d.fp > 0.0 && d.fp + tau * d.fpp > 0.0;
    }
    const double T = fam.domain_min();
    return tau * d.fp + (tau * tau - T * T) * d.fpp > 0.0;
}

double ode_residual(const PotentialFamily& fam, double tau) {
    const Derivatives d = potential_derivatives(fam, tau);
    if (!positive(fam, tau, d)) {
        throw PositivityError(fam.name() + ": positivity conditions fail at tau = " +
                              std::to_string(tau));
    }
    double lhs;
    if (fam.kind == Kind::resolved) {
        lhs = (4.0 * fam.a * fam.a + tau * d.fp) * d.fp * (d.fp + tau * d.fpp);
    } else {
        const double T = fam.domain_min();
        lhs = d.fp * d.fp * (d.fp * tau + d.fpp * (tau * tau - T * T));
    }
    return std::abs(lhs - fam.c()) / fam.c();
}

HermitianHessian hermitian_hessian(const PotentialFamily& fam, const core::FiberPoint& p) {
    if (fam.kind == Kind::resolved) {
        throw DomainError("hermitian_hessian: the resolved family takes a ResolvedPoint");
    }
    const cplx t = fam.kind == Kind::smoothed ? fam.t : cplx{0.0, 0.0};
    if (std::abs(p.t - t) > 1e-12 * (1.0 + std::abs(t)) ||
        !core::on_fiber(core::FiberPoint{p.z, t}, 1e-8)) {
        throw DomainError("hermitian_hessian: point is not on the family's fiber");
    }
    const double tau = p.z.squaredNorm();
    if (tau == 0.0) throw DegenerateChartError("hermitian_hessian: apex of the cone");
    const int c = core::dominant_chart(p.z);
    int o[3];
    for (int i = 0, n = 0; i < 4; ++i) {
        if (i != c) o[n++] = i;
    }
    const cplx zc = p.z[c];
    Eigen::Vector3cd dzc;
    Eigen::Vector3cd dtau;
    for (int j = 0; j < 3; ++j) {
        dzc[j] = -p.z[o[j]] / zc;
        dtau[j] = std::conj(p.z[o[j]]) + std::conj(zc) * dzc[j];
    }
    const Derivatives d = potential_derivatives(fam, tau);
    HermitianHessian out;
    out.H = d.fp * (Eigen::Matrix3cd::Identity() + dzc * dzc.adjoint()) +
            d.fpp * (dtau * dtau.adjoint());
    out.density = 1.0 / std::norm(2.0 * zc);
    out.tau = tau;
    out.chart = c;
    return out;
}

HermitianHessian hermitian_hessian(const PotentialFamily& fam, const core::ResolvedPoint& q) {
    if (fam.kind != Kind::resolved) {
        throw DomainError("hermitian_hessian: ResolvedPoint requires the resolved family");
    }
    const int r = std::abs(q.u[0]) >= std::abs(q.u[1]) ? 0 : 1;
    const cplx ur = q.u[r];
    if (ur == cplx{0.0, 0.0}) throw DegenerateChartError("hermitian_hessian: [0:0]");
    const cplx X = q.u[1 - r] / ur;
    const cplx W1 = q.w[0] * ur;
    const cplx W2 = q.w[1] * ur;
    const double h = 1.0 + std::norm(X);
    const double rho = std::norm(W1) + std::norm(W2);
    const double tau = h * rho;
    Eigen::Vector3cd dtau;
    dtau << std::conj(X) * rho, h * std::conj(W1), h * std::conj(W2);
    Eigen::Matrix3cd htau;
    htau << rho, std::conj(X) * W1, std::conj(X) * W2,
            X * std::conj(W1), h, 0.0,
            X * std::conj(W2), 0.0, h;
    const Derivatives d = potential_derivatives(fam, tau);
    HermitianHessian out;
    out.H = d.fp * htau + d.fpp * (dtau * dtau.adjoint());
    out.H(0, 0) += 4.0 * fam.a * fam.a / (h * h);
    out.density = 1.0;
    out.tau = tau;
    out.chart = r;
    return out;
}

double ma_ratio(const HermitianHessian& h) { return h.H.determinant().real() / h.density; }

double expected_ma_constant(const PotentialFamily& fam) {
    return fam.kind == Kind::resolved ? fam.c() : 4.0 * fam.c();
}

double calibrate_ma(const PotentialFamily& fam) {
    switch (fam.kind) {
        case Kind::cone:
            return ma_ratio(hermitian_hessian(fam, normal_form_point(fam, 1.0)));
        case Kind::smoothed:
            return ma_ratio(hermitian_hessian(fam, normal_form_point(fam, 2.0 * std::abs(fam.t))));
        case Kind::resolved:
            return ma_ratio(hermitian_hessian(
                fam, core::ResolvedPoint::make(1.0, 0.0, std::pow(fam.a, 1.5), 0.0)));
    }
    return 0.0;
}

double monge_ampere_residual(const HermitianHessian& h, double calibrated) {
    return std::abs(ma_ratio(h) / calibrated - 1.0);
}

core::FiberPoint normal_form_point(const PotentialFamily& fam, double tau) {
    if (fam.kind == Kind::resolved) {
        throw DomainError("normal_form_point: not defined for the resolved family");
    }
    require_tau(fam, tau);
    const double T = fam.domain_min();
    const double alpha = std::sqrt(0.5 * (tau - T));
    const double beta = std::sqrt(0.5 * (tau + T));
    const cplx phase = fam.kind == Kind::smoothed ? std::polar(1.0, 0.5 * std::arg(fam.t))
                                                 : cplx{1.0, 0.0};
    core::FiberPoint p;
    p.t = fam.kind == Kind::smoothed ? fam.t : cplx{0.0, 0.0};
    p.z << phase * cplx{0.0, alpha}, 0.0, 0.0, phase * beta;
    return p;
}

core::FiberPoint sample_fiber_point(const PotentialFamily& fam, double tau, std::uint64_t seed) {
    core::FiberPoint p = normal_form_point(fam, tau);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Matrix4d g;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) g(i, j) = normal(rng);
    }
    Eigen::Matrix4d rot = g.householderQr().householderQ();
    if (rot.determinant() < 0.0) rot.col(0) *= -1.0;
    p.z = rot.cast<cplx>() * p.z;
    return p;
}

core::ResolvedPoint sample_resolved_point(double radius, int chart, std::uint64_t seed) {
    if (!(radius > 0.0)) throw DomainError("sample_resolved_point: radius must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const cplx X = std::polar(std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
    Eigen::Vector2cd w;
    for (int i = 0; i < 2; ++i) w[i] = cplx{normal(rng), normal(rng)};
    w *= radius / w.norm();
    if (chart == 0) return core::ResolvedPoint::make(1.0, X, w[0], w[1]);
    return core::ResolvedPoint::make(X, 1.0, w[0], w[1]);
}

double asymptotic_threshold(const PotentialFamily& fam) {
    switch (fam.kind) {
        case Kind::smoothed: return 10.0 * std::abs(fam.t);
        case Kind::resolved: return 10.0 * fam.a * fam.a * fam.a;
        default: return 0.0;
    }
}

double asymptotic_deviation(const PotentialFamily& fam, double tau, const quad::Options& opts) {
    if (fam.kind == Kind::cone) {
        require_tau(fam, tau);
        return 0.0;
    }
    if (!(tau >= asymptotic_threshold(fam))) {
        throw DomainError(fam.name() + ": asymptotic_deviation requires tau >= 10 max(|t|, a^3)");
    }
    if (fam.kind == Kind::smoothed) {
        const double T = std::abs(fam.t);
        return -std::pow(T, 2.0 / 3.0) * tail_integral(&smoothed_tail_remainder, tau / T, opts);
    }
    const double a = fam.a;
    return -a * a * tail_integral(&resolved_tail_remainder, tau / (a * a * a), opts);
}

std::vector<double> potential_convergence_sup(Kind kind, const std::vector<double>& params,
                                              double tau0, double tau1, int grid,
                                              const quad::Options& opts) {
    if (!(tau0 > 0.0) || !(tau1 > tau0)) {
        throw DomainError("potential_convergence_sup: need 0 < tau0 < tau1");
    }
    if (grid < 2) throw DomainError("potential_convergence_sup: grid needs at least 2 points");
    std::vector<double> out(params.size(), 0.0);
    if (kind == Kind::cone) return out;
    for (double p : params) {
        if (!(p > 0.0)) throw DomainError("potential_convergence_sup: parameters must be positive");
        if (kind == Kind::smoothed && tau0 < p) {
            throw DomainError("potential_convergence_sup: annulus must lie in tau >= |t|");
        }
    }
    parallel_for(params.size(), [&](std::size_t k) {
        const double p = params[k];
        auto integrand = [&](double tau) {
            if (kind == Kind::resolved) return resolved_conical_remainder(tau / (p * p * p)) / p;
            return smoothed_conical_remainder(tau / p) / std::cbrt(p);
        };
        double running = 0.0;
        double sup = 0.0;
        double prev = tau0;
        for (int i = 1; i < grid; ++i) {
            const double tau = tau0 + (tau1 - tau0) * static_cast<double>(i) / (grid - 1);
            running += quad::integrate(integrand, prev, tau, opts).value;
            sup = std::max(sup, std::abs(running));
            prev = tau;
        }
        out[k] = sup;
    });
    return out;
}

}  // namespace conifold::metrics
