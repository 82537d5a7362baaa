#include <conifold/slag.hpp>

#include <conifold/error.hpp>
#include <conifold/parallel.hpp>

#include <Eigen/LU>

#include <cmath>
#include <numbers>

namespace conifold::slag {

namespace {

struct Rule1d {
    std::vector<double> x;
    std::vector<double> w;
};

Rule1d gauss_panels(double a, double b, int panels) {
    const double g = 1.0 / std::sqrt(3.0);
    Rule1d r;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * h;
        r.x.push_back(c - 0.5 * h * g);
        r.x.push_back(c + 0.5 * h * g);
        r.w.push_back(0.5 * h);
        r.w.push_back(0.5 * h);
    }
    return r;
}

}  // namespace

CycleGrid sample_vanishing_cycle(cplx t, int resolution) {
    if (t == cplx{0.0, 0.0}) throw DomainError("sample_vanishing_cycle: t must be non-zero");
    if (resolution < 8 || resolution % 2 != 0) {
        throw DomainError("sample_vanishing_cycle: resolution must be even and >= 8");
    }
    const double pi = std::numbers::pi;
    const Rule1d th = gauss_panels(0.0, pi, resolution / 2);
    const cplx root = std::sqrt(t);
    CycleGrid grid;
    grid.t = t;
    grid.resolution = resolution;
    grid.nodes.reserve(static_cast<std::size_t>(resolution) * resolution * resolution);
    const double dphi = 2.0 * pi / resolution;
    for (int i = 0; i < resolution; ++i) {
        const double t1 = th.x[i];
        const double c1 = std::cos(t1), s1 = std::sin(t1);
        for (int j = 0; j < resolution; ++j) {
            const double t2 = th.x[j];
            const double c2 = std::cos(t2), s2 = std::sin(t2);
            for (int k = 0; k < resolution; ++k) {
                const double ph = (k + 0.5) * dphi;
                const double c3 = std::cos(ph), s3 = std::sin(ph);
                CycleNode n;
                n.u << c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3;
                const core::Vec4d e_th1(-s1, c1 * c2, c1 * s2 * c3, c1 * s2 * s3);
                const core::Vec4d e_th2(0.0, -s2, c2 * c3, c2 * s3);
                const core::Vec4d e_phi(0.0, 0.0, -s3, c3);
                n.e = {e_th2, e_th1, e_phi};
                n.z = root * n.u.cast<cplx>();
                for (int a = 0; a < 3; ++a) n.frame[a] = root * n.e[a].cast<cplx>();
                n.weight = s1 * s1 * s2 * th.w[i] * th.w[j] * dphi;
                grid.nodes.push_back(n);
            }
        }
    }
    return grid;
}

CycleGrid reversed(CycleGrid grid) {
    grid.orientation = -grid.orientation;
    return grid;
}

cplx integrate_volume_form(const CycleGrid& grid, Route route) {
    std::vector<cplx> terms(grid.nodes.size());
    parallel_for(grid.nodes.size(), [&](std::size_t i) {
        const CycleNode& n = grid.nodes[i];
        cplx value;
        if (route == Route::real_slice) {
            Eigen::Matrix3d m;
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) m(r, c) = n.e[c][r];
            }
            value = grid.t * m.determinant() / n.u[3];
        } else {
            value = core::model_form_on_frame(n.z, n.frame);
        }
        terms[i] = n.weight * value;
    });
    return static_cast<double>(grid.orientation) * pairwise_sum(terms);
}

cplx exact_cycle_integral(cplx t) { return 2.0 * std::numbers::pi * std::numbers::pi * t; }

double calibration_residual(cplx t, const core::Vec4c& z, const core::Frame3& frame) {
    for (const auto& v : frame) {
        const double scale = z.norm() * v.norm();
        const cplx dfiber = (z.transpose() * v)(0);
        const double dnorm = (z.adjoint() * v)(0).real();
        if (std::abs(dfiber) > 1e-8 * scale || std::abs(dnorm) > 1e-8 * scale) {
            throw DomainError("calibration_residual: frame is not tangent to L_t");
        }
    }
    const cplx value = core::model_form_on_frame(z, frame);
    const cplx rotated = value * std::polar(1.0, -std::arg(t));
    return std::abs(rotated.imag()) / std::abs(value);
}

double lagrangian_residual(const core::Frame3& frame) {
    double worst = 0.0;
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            const double w = (frame[a].adjoint() * frame[b])(0).imag();
            worst = std::max(worst, std::abs(w) / (frame[a].norm() * frame[b].norm()));
        }
    }
    return worst;
}

core::Frame3 rotate_first_leg(const core::Frame3& frame, double alpha) {
    core::Frame3 out = frame;
    out[0] = std::cos(alpha) * frame[0] + std::sin(alpha) * (cplx{0.0, 1.0} * frame[0]);
    return out;
}

}  // namespace conifold::slag
