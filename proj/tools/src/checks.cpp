#include <conifold_lab/checks.hpp>

#include <conifold_oracles/oracles.hpp>

#include <cmath>

namespace conifold::lab {

using core::cplx;
using core::Vec4c;

Vec4c generic_v0_point() {
    return core::complete_on_fiber({0.31, 0.22}, {-0.47, 0.13}, {0.26, -0.38}, 0.0, {0.2, 0.7});
}

double expansion_error(const Vec4c& z, cplx t) {
    const exterior::Form diff =
        (core::pullback_model_form(z, t) - core::omega_0_form(z)) * (1.0 / t) -
        core::omega_tilde_1_form(z);
    return diff.norm() / core::omega_tilde_1_form(z).norm();
}

double closedness_measure(const Vec4c& z) {
    const double scale = core::omega_tilde_1_form(z).norm() / z.norm();
    return core::omega_tilde_1_exterior_derivative_norm(z) / scale;
}

namespace {

cplx evaluate(const exterior::Form& f, const core::Frame3& frame) {
    cplx values[3][exterior::kGenerators];
    for (int c = 0; c < 3; ++c) core::chart_generator_values(frame[c], values[c]);
    return f.evaluate(values, 3);
}

core::Frame3 scaled(const core::Frame3& frame, cplx mu) {
    core::Frame3 out = frame;
    for (auto& v : out) v *= mu;
    return out;
}

}  // namespace

double omega_tilde_1_scaling_residual(const Vec4c& z, cplx lambda, std::uint64_t seed) {
    const cplx mu = lambda * std::sqrt(lambda);
    const core::Frame3 frame = core::tangent_frame_v0(z, seed);
    const cplx base = core::omega_tilde_1(z, frame);
    const cplx moved = core::omega_tilde_1(core::rescale_fiber({z, 0.0}, lambda).z, scaled(frame, mu));
    return std::abs(moved - base) / std::abs(base);
}

double omega_0_scaling_residual(const Vec4c& z, cplx lambda, std::uint64_t seed) {
    const cplx mu = lambda * std::sqrt(lambda);
    const core::Frame3 frame = core::tangent_frame_v0(z, seed);
    const cplx base = evaluate(core::omega_0_form(z), frame);
    const cplx moved =
        evaluate(core::omega_0_form(core::rescale_fiber({z, 0.0}, lambda).z), scaled(frame, mu));
    return std::abs(moved - mu * mu * base) / std::abs(mu * mu * base);
}

transitions::RationalClassMatrix tian_yau_classes() {
    transitions::RationalClassMatrix rows(15, std::vector<Rational>(14, Rational(0)));
    for (int i = 0; i < 14; ++i) {
        rows[i][i] = 1;
        rows[14][i] = -1;
    }
    return rows;
}

BruteForceAudit friedman_bruteforce_audit(int max_rows, int max_cols) {
    BruteForceAudit audit;
    for (int n = 1; n <= max_rows; ++n) {
        for (int m = 1; m <= max_cols; ++m) {
            const int cells = n * m;
            long total = 1;
            for (int i = 0; i < cells; ++i) total *= 3;
            oracles::IntMatrix ints(n, std::vector<std::int64_t>(m));
            transitions::RationalClassMatrix exact(n, std::vector<Rational>(m));
            transitions::ClassMatrix gauss(n, std::vector<transitions::GaussianRational>(m));
            for (long code = 0; code < total; ++code) {
                long c = code;
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < m; ++j) {
                        const int v = static_cast<int>(c % 3) - 1;
                        c /= 3;
                        ints[i][j] = v;
                        exact[i][j] = v;
                        gauss[i][j] = transitions::GaussianRational(Rational(v));
                    }
                }
                const bool expected = oracles::friedman_feasible_bruteforce(ints);
                const transitions::FriedmanResult r = transitions::friedman_witness(exact);
                ++audit.cases;
                if (r.feasible != expected) ++audit.disagreements;
                if (r.feasible && !transitions::verify_witness(gauss, r.lambda)) ++audit.unsound;
            }
        }
    }
    return audit;
}

}  // namespace conifold::lab
