#include <conifold/conifold_core.hpp>

#include <conifold/error.hpp>

#include <Eigen/LU>

#include <cmath>
#include <random>
#include <string>

namespace conifold::core {

using exterior::Form;

cplx fiber_defect(const FiberPoint& p) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < 4; ++i) s += p.z[i] * p.z[i];
    return s - p.t;
}

bool on_fiber(const FiberPoint& p, double tol) {
    return std::abs(fiber_defect(p)) <= tol * (1.0 + p.z.squaredNorm());
}

FiberPoint rescale_fiber(const FiberPoint& p, cplx lambda) {
    if (lambda == cplx{0.0, 0.0}) {
        throw DomainError("rescale_fiber: lambda must be non-zero");
    }
    const cplx mu = lambda * std::sqrt(lambda);
    return FiberPoint{mu * p.z, lambda * lambda * lambda * p.t};
}

FiberPoint phi_map(const FiberPoint& p, cplx t) {
    const double s = p.z.squaredNorm();
    if (s == 0.0) {
        throw DomainError("phi_map: z = 0 is the singular point");
    }
    if (s <= std::abs(t) / 2.0) {
        throw DomainError("phi_map: |z|^2 <= |t|/2 lies outside the injectivity domain");
    }
    if (!on_fiber(FiberPoint{p.z, 0.0}, 1e-8)) {
        throw DomainError("phi_map: input point is not on V_0");
    }
    FiberPoint out;
    out.t = t;
    out.z = p.z + p.z.conjugate() * (t / (2.0 * s));
    return out;
}

Vec4c phi_map_differential(const Vec4c& z, cplx t, const Vec4c& v) {
    const double s = z.squaredNorm();
    const double ds = 2.0 * (z.conjugate().transpose() * v)(0).real();
    return v + v.conjugate() * (t / (2.0 * s)) - z.conjugate() * (t * ds / (2.0 * s * s));
}

int dominant_chart(const Vec4c& z) {
    int best = 0;
    for (int j = 1; j < 4; ++j) {
        if (std::abs(z[j]) > std::abs(z[best])) best = j;
    }
    return best;
}

double chart_margin(const Vec4c& z) { return z.norm() / 4.0; }

namespace {

void check_chart(const Vec4c& z, int chart) {
    if (chart < 0 || chart > 3) {
        throw DomainError("chart index must be in 0..3");
    }
    const double zj = std::abs(z[chart]);
    if (zj == 0.0 || zj < chart_margin(z)) {
        throw DegenerateChartError("chart z" + std::to_string(chart + 1) +
                                   " is below the margin |z|/4 at this point");
    }
}

double chart_sign(int chart) { return ((3 - chart) % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

ThreeFormValue holomorphic_volume_form(const FiberPoint& p, int chart) {
    check_chart(p.z, chart);
    return ThreeFormValue{chart, chart_sign(chart) / (2.0 * p.z[chart])};
}

ThreeFormValue model_volume_form(const FiberPoint& p, int chart) {
    check_chart(p.z, chart);
    return ThreeFormValue{chart, chart_sign(chart) / p.z[chart]};
}

cplx evaluate_on_frame(const ThreeFormValue& form, const Frame3& frame) {
    int rows[3];
    int n = 0;
    for (int i = 0; i < 4; ++i) {
        if (i != form.chart) rows[n++] = i;
    }
    Eigen::Matrix3cd m;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) m(r, c) = frame[c][rows[r]];
    }
    return form.coeff * m.determinant();
}

cplx model_form_on_frame(const Vec4c& z, const Frame3& frame) {
    return evaluate_on_frame(model_volume_form(FiberPoint{z, 0.0}, dominant_chart(z)), frame);
}

void chart_generator_values(const Vec4c& v, cplx out[exterior::kGenerators]) {
    for (int a = 0; a < 3; ++a) {
        out[a] = v[a];
        out[a + 3] = std::conj(v[a]);
    }
}

Form coordinate_differential(const Vec4c& z, int i) {
    if (i < 3) return Form::generator(i);
    Form f;
    for (int a = 0; a < 3; ++a) f += Form::generator(a, -z[a] / z[3]);
    return f;
}

Form coordinate_differential_conj(const Vec4c& z, int i) {
    if (i < 3) return Form::generator(i + 3);
    Form f;
    for (int a = 0; a < 3; ++a) f += Form::generator(a + 3, std::conj(-z[a] / z[3]));
    return f;
}

namespace {

// d |z|^2.
Form norm_squared_differential(const Vec4c& z) {
    Form f;
    for (int i = 0; i < 4; ++i) {
        f += std::conj(z[i]) * coordinate_differential(z, i);
        f += z[i] * coordinate_differential_conj(z, i);
    }
    return f;
}

void require_chart3(const Vec4c& z) {
    if (z.squaredNorm() == 0.0) {
        throw DomainError("deformation form: z = 0 is excluded");
    }
    check_chart(z, 3);
}

}  // namespace

Form omega_0_form(const Vec4c& z) {
    require_chart3(z);
    return wedge(wedge(Form::generator(0), Form::generator(1)), Form::generator(2)) *
           (1.0 / z[3]);
}

Form pullback_model_form(const Vec4c& z, cplx t) {
    require_chart3(z);
    const double s = z.squaredNorm();
    const Form ds = norm_squared_differential(z);
    Form dphi[3];
    for (int i = 0; i < 3; ++i) {
        dphi[i] = coordinate_differential(z, i) +
                  coordinate_differential_conj(z, i) * (t / (2.0 * s)) -
                  ds * (t * std::conj(z[i]) / (2.0 * s * s));
    }
    const cplx phi4 = z[3] + std::conj(z[3]) * t / (2.0 * s);
    return wedge(wedge(dphi[0], dphi[1]), dphi[2]) * (1.0 / phi4);
}

Form omega_tilde_1_form(const Vec4c& z) {
    require_chart3(z);
    const double s = z.squaredNorm();
    const Form ds = norm_squared_differential(z);
    Form g[3];
    Form beta[3];
    for (int a = 0; a < 3; ++a) {
        g[a] = Form::generator(a);
        beta[a] = coordinate_differential_conj(z, a) * (1.0 / (2.0 * s)) -
                  ds * (std::conj(z[a]) / (2.0 * s * s));
    }
    const cplx z4 = z[3];
    Form out = wedge(wedge(g[0], g[1]), g[2]) * (-std::conj(z4) / (2.0 * z4 * z4 * s));
    Form bracket = wedge(wedge(beta[0], g[1]), g[2]);
    bracket += wedge(wedge(g[0], beta[1]), g[2]);
    bracket += wedge(wedge(g[0], g[1]), beta[2]);
    out += bracket * (1.0 / z4);
    return out;
}

std::array<cplx, 10> omega_tilde_1_coefficients(const Vec4c& z) {
    const Form f = omega_tilde_1_form(z);
    std::array<cplx, 10> out{};
    out[0] = f[0b000111];
    static constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    int k = 1;
    for (int i = 0; i < 3; ++i) {
        for (const auto& jk : pairs) {
            // conj(dz_i) dz_j dz_k equals the sorted monomial dz_j dz_k conj(dz_i).
            const std::uint32_t mask = (1u << jk[0]) | (1u << jk[1]) | (1u << (i + 3));
            out[k++] = f[mask];
        }
    }
    return out;
}

cplx omega_tilde_1(const Vec4c& z, const Frame3& frame) {
    cplx values[3][exterior::kGenerators];
    for (int c = 0; c < 3; ++c) chart_generator_values(frame[c], values[c]);
    return omega_tilde_1_form(z).evaluate(values, 3);
}

Vec4c complete_on_fiber(const cplx& z1, const cplx& z2, const cplx& z3, cplx t,
                        cplx reference_z4) {
    const cplx r = std::sqrt(t - (z1 * z1 + z2 * z2 + z3 * z3));
    Vec4c out;
    out << z1, z2, z3, (std::abs(r - reference_z4) <= std::abs(r + reference_z4) ? r : -r);
    return out;
}

double omega_tilde_1_exterior_derivative_norm(const Vec4c& z) {
    require_chart3(z);
    const double h = 1e-4 * z.norm();
    static constexpr double stencil[4] = {-2.0, -1.0, 1.0, 2.0};
    static constexpr double weight[4] = {1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0};
    Form d;
    for (int a = 0; a < 3; ++a) {
        Form partial[2];  // d/dx_a and d/dy_a
        for (int part = 0; part < 2; ++part) {
            const cplx dir = (part == 0) ? cplx{1.0, 0.0} : cplx{0.0, 1.0};
            for (int k = 0; k < 4; ++k) {
                cplx w[3] = {z[0], z[1], z[2]};
                w[a] += stencil[k] * h * dir;
                const Vec4c zp = complete_on_fiber(w[0], w[1], w[2], 0.0, z[3]);
                partial[part] += omega_tilde_1_form(zp) * (weight[k] / h);
            }
        }
        const Form dz = (partial[0] - partial[1] * cplx{0.0, 1.0}) * 0.5;
        const Form dzbar = (partial[0] + partial[1] * cplx{0.0, 1.0}) * 0.5;
        d += wedge(Form::generator(a), dz);
        d += wedge(Form::generator(a + 3), dzbar);
    }
    return d.norm();
}

Frame3 tangent_frame_v0(const Vec4c& z, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double s = z.squaredNorm();
    Frame3 frame;
    for (auto& v : frame) {
        for (int i = 0; i < 4; ++i) v[i] = cplx{normal(rng), normal(rng)};
        const cplx c = (z.transpose() * v)(0);
        v -= z.conjugate() * (c / s);
        v *= std::sqrt(s) / v.norm();
    }
    return frame;
}

RealSplitting real_coordinates(const FiberPoint& p, double tol) {
    const cplx t = p.t;
    if (std::abs(t.imag()) > tol * std::abs(t) || !(t.real() > 0.0)) {
        throw DomainError("real_coordinates: t must be real and positive; rotate by the phase of t first");
    }
    if (!on_fiber(p, 1e-8)) {
        throw DomainError("real_coordinates: point is not on V_t");
    }
    const Vec4d x = p.z.real();
    const Vec4d y = p.z.imag();
    RealSplitting out;
    out.u = x / x.norm();
    out.v = y * y.norm();
    return out;
}

FiberPoint from_real_coordinates(const RealSplitting& s, double t) {
    if (!(t > 0.0)) {
        throw DomainError("from_real_coordinates: t must be positive");
    }
    const double vn = s.v.norm();
    const double ynorm = std::sqrt(vn);
    const Vec4d y = (vn > 0.0) ? Vec4d(s.v / ynorm) : Vec4d::Zero();
    const Vec4d x = std::sqrt(ynorm * ynorm + t) * s.u;
    FiberPoint p;
    p.t = t;
    for (int i = 0; i < 4; ++i) p.z[i] = cplx{x[i], y[i]};
    return p;
}

ResolvedPoint ResolvedPoint::make(cplx u1, cplx u2, cplx w1, cplx w2) {
    const cplx k = (std::abs(u1) >= std::abs(u2)) ? u1 : u2;
    if (k == cplx{0.0, 0.0}) {
        throw DomainError("ResolvedPoint: [U1:U2] = [0:0] is not a point of P^1");
    }
    ResolvedPoint q;
    q.u = {u1 / k, u2 / k};
    q.w = {w1 * k, w2 * k};
    return q;
}

Vec4c resolve_project(const ResolvedPoint& q) {
    Vec4c out;
    out << q.u[0] * q.w[0], q.u[1] * q.w[1], q.u[0] * q.w[1], q.u[1] * q.w[0];
    return out;
}

cplx quadric_defect(const Vec4c& p) { return p[0] * p[1] - p[2] * p[3]; }

ResolvedPoint resolved_rescale(const ResolvedPoint& q, double a) {
    if (!(a > 0.0)) {
        throw DomainError("resolved_rescale: a must be positive");
    }
    ResolvedPoint out = q;
    const double k = std::pow(a, 1.5);
    out.w = {q.w[0] * k, q.w[1] * k};
    return out;
}

}  // namespace conifold::core
