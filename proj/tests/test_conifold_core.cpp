#include <conifold/conifold_core.hpp>
#include <conifold/error.hpp>

#include <conifold_lab/checks.hpp>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace conifold;
using namespace conifold::core;
using exterior::Form;

namespace {

// Random point of V_t with |z| of order `scale`.
Vec4c random_fiber_point(cplx t, double scale, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, scale);
    for (;;) {
        const cplx a{g(rng), g(rng)}, b{g(rng), g(rng)}, c{g(rng), g(rng)};
        const cplx ref{g(rng), g(rng)};
        const Vec4c z = complete_on_fiber(a, b, c, t, ref);
        if (std::abs(z[3]) > chart_margin(z)) return z;
    }
}

}  // namespace

TEST(Exterior, WedgeIsGradedCommutative) {
    const Form a = Form::generator(0, {1.0, 2.0}) + Form::generator(4, {0.5, -1.0});
    const Form b = Form::generator(1, {-0.3, 0.7}) + Form::generator(3, 2.0);
    EXPECT_LT((wedge(a, b) + wedge(b, a)).norm(), 1e-15);
    EXPECT_LT(wedge(a, a).norm(), 1e-15);
    EXPECT_EQ(exterior::merge_sign(0b001, 0b010), 1);
    EXPECT_EQ(exterior::merge_sign(0b010, 0b001), -1);
    EXPECT_EQ(exterior::merge_sign(0b011, 0b001), 0);
}

TEST(Exterior, EvaluateIsDeterminant) {
    const Form f = wedge(wedge(Form::generator(0), Form::generator(1)), Form::generator(2));
    cplx values[3][exterior::kGenerators] = {};
    for (int v = 0; v < 3; ++v) {
        for (int g = 0; g < 3; ++g) values[v][g] = cplx(v == g ? 2.0 : 0.0, v + g);
    }
    Eigen::Matrix3cd m;
    for (int v = 0; v < 3; ++v) {
        for (int g = 0; g < 3; ++g) m(v, g) = values[v][g];
    }
    EXPECT_LT(std::abs(f.evaluate(values, 3) - m.determinant()), 1e-13);
}

TEST(PhiMap, LandsOnFiberAndKeepsRadialStructure) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const cplx t = std::polar(std::uniform_real_distribution<double>(0.01, 2.0)(rng),
                                  std::uniform_real_distribution<double>(-3.0, 3.0)(rng));
        Vec4c z = random_fiber_point(0.0, 1.0, rng);
        const double s = z.squaredNorm();
        if (s <= std::abs(t)) z *= std::sqrt(2.0 * std::abs(t) / s);
        const FiberPoint w = phi_map({z, 0.0}, t);
        EXPECT_LT(std::abs(fiber_defect(w)), 1e-12 * (1.0 + w.z.squaredNorm()));
        // |Phi_t(z)|^2 = |z|^2 + |t|^2 / (4 |z|^2) because sum z_i^2 = 0.
        const double s2 = z.squaredNorm();
        EXPECT_NEAR(w.z.squaredNorm(), s2 + std::norm(t) / (4.0 * s2), 1e-12 * s2);
    }
}

TEST(PhiMap, InjectiveOnItsDomain) {
    std::mt19937_64 rng(11);
    const cplx t{0.4, 0.3};
    std::vector<Vec4c> pts, images;
    for (int i = 0; i < 300; ++i) {
        Vec4c z = random_fiber_point(0.0, 1.0, rng);
        z *= std::sqrt((0.6 + i * 0.01) * std::abs(t) / z.squaredNorm());
        pts.push_back(z);
        images.push_back(phi_map({z, 0.0}, t).z);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if ((pts[i] - pts[j]).norm() > 1e-9) EXPECT_GT((images[i] - images[j]).norm(), 1e-12);
        }
    }
}

TEST(PhiMap, RejectsInvalidInput) {
    const Vec4c z = lab::generic_v0_point();
    EXPECT_THROW(phi_map({Vec4c::Zero(), 0.0}, 1.0), DomainError);
    EXPECT_THROW(phi_map({z, 0.0}, 4.0 * z.squaredNorm()), DomainError);
    Vec4c off = z;
    off[0] += 0.1;
    EXPECT_THROW(phi_map({off, 0.0}, 0.01), DomainError);
}

TEST(PhiMap, DifferentialMatchesFiniteDifferences) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    const cplx t{0.2, -0.1};
    for (int i = 0; i < 20; ++i) {
        const Vec4c z = random_fiber_point(0.0, 1.0, rng);
        Vec4c v;
        for (int k = 0; k < 4; ++k) v[k] = {g(rng), g(rng)};
        const double h = 1e-5;
        auto phi = [&](const Vec4c& x) {
            return Vec4c(x + x.conjugate() * (t / (2.0 * x.squaredNorm())));
        };
        const Vec4c fd = (phi(z + h * v) - phi(z - h * v)) / (2.0 * h);
        EXPECT_LT((phi_map_differential(z, t, v) - fd).norm(), 1e-8 * v.norm());
    }
}

TEST(Rescale, PreservesFiberEquation) {
    const FiberPoint p{complete_on_fiber({0.3, 0.1}, {-0.2, 0.5}, {0.7, 0.0}, {0.5, 0.2}, 1.0),
                       {0.5, 0.2}};
    for (cplx lambda : {cplx(2.0, 0.0), cplx(0.3, 0.4), cplx(-1.0, 0.5)}) {
        const FiberPoint q = rescale_fiber(p, lambda);
        EXPECT_LT(std::abs(fiber_defect(q)), 1e-12);
        EXPECT_LT(std::abs(q.t - lambda * lambda * lambda * p.t), 1e-12);
    }
    EXPECT_THROW(rescale_fiber(p, 0.0), DomainError);
}

TEST(VolumeForm, ChartsAgreeOnTangentFrames) {
    std::mt19937_64 rng(8);
    const cplx t{1.0, 0.5};
    for (int i = 0; i < 30; ++i) {
        const Vec4c z = random_fiber_point(t, 1.5, rng);
        // Tangent frame to V_t: project Gaussians onto z^T v = 0.
        Frame3 frame;
        std::normal_distribution<double> g;
        for (auto& v : frame) {
            for (int k = 0; k < 4; ++k) v[k] = {g(rng), g(rng)};
            v -= z.conjugate() * ((z.transpose() * v)(0) / z.squaredNorm());
        }
        const FiberPoint p{z, t};
        const cplx ref = evaluate_on_frame(model_volume_form(p, 3), frame);
        for (int j = 0; j < 4; ++j) {
            if (std::abs(z[j]) < chart_margin(z)) continue;
            EXPECT_LT(std::abs(evaluate_on_frame(model_volume_form(p, j), frame) - ref), 1e-10 * std::abs(ref));
            EXPECT_LT(std::abs(2.0 * evaluate_on_frame(holomorphic_volume_form(p, j), frame) - ref),
                      1e-10 * std::abs(ref));
        }
    }
}

TEST(VolumeForm, DegenerateChartThrows) {
    const FiberPoint p{Vec4c(cplx(1.0), cplx(0.0, 1.0), cplx(1e-9), cplx(0.0)), 0.0};
    EXPECT_THROW(model_volume_form(p, 3), DegenerateChartError);
    EXPECT_THROW(model_volume_form(p, 7), DomainError);
}

TEST(DeformationForm, ExpansionIsFirstOrder) {
    const Vec4c z = lab::generic_v0_point();
    for (double phase : {0.0, 0.37, 2.0}) {
        const double e2 = lab::expansion_error(z, std::polar(1e-2, phase));
        const double e3 = lab::expansion_error(z, std::polar(1e-3, phase));
        EXPECT_LT(e3, 1e-2);
        EXPECT_NEAR(e2 / e3, 10.0, 2.0);
    }
}

TEST(DeformationForm, CoefficientsMatchForm) {
    const Vec4c z = lab::generic_v0_point();
    const auto c = omega_tilde_1_coefficients(z);
    const Form f = omega_tilde_1_form(z);
    EXPECT_EQ(c[0], f[0b000111]);
    double sum = 0.0;
    for (const auto& x : c) sum += std::norm(x);
    EXPECT_NEAR(std::sqrt(sum), f.norm(), 1e-14 * f.norm());
}

TEST(DeformationForm, IsClosed) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 5; ++i) {
        const Vec4c z = random_fiber_point(0.0, 1.0, rng);
        EXPECT_LT(lab::closedness_measure(z), 1e-6);
    }
}

TEST(DeformationForm, ScalesHomogeneously) {
    const Vec4c z = lab::generic_v0_point();
    for (double m : {0.5, 2.0, 10.0}) {
        for (double phase : {0.0, 0.9}) {
            EXPECT_LT(lab::omega_tilde_1_scaling_residual(z, std::polar(m, phase), 4), 1e-10);
            EXPECT_LT(lab::omega_0_scaling_residual(z, std::polar(m, phase), 4), 1e-10);
        }
    }
}

TEST(RealSplitting, RoundTrip) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const double t = 0.1 + std::abs(g(rng));
        RealSplitting s;
        Vec4d u, w;
        for (int k = 0; k < 4; ++k) {
            u[k] = g(rng);
            w[k] = g(rng);
        }
        s.u = u.normalized();
        s.v = w - s.u * s.u.dot(w);
        const FiberPoint p = from_real_coordinates(s, t);
        EXPECT_LT(std::abs(fiber_defect(p)), 1e-11 * (1.0 + p.z.squaredNorm()));
        const RealSplitting back = real_coordinates(p);
        EXPECT_LT((back.u - s.u).norm(), 1e-10);
        EXPECT_LT((back.v - s.v).norm(), 1e-10 * (1.0 + s.v.norm()));
    }
    EXPECT_THROW(real_coordinates({Vec4c::Zero(), {0.0, 1.0}}), DomainError);
}

TEST(Resolution, ProjectsOntoQuadric) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int i = 0; i < 100; ++i) {
        const ResolvedPoint q =
            ResolvedPoint::make({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
        EXPECT_LE(std::max(std::abs(q.u[0]), std::abs(q.u[1])), 1.0 + 1e-15);
        const Vec4c xyzw = resolve_project(q);
        EXPECT_LT(std::abs(quadric_defect(xyzw)), 1e-13 * (1.0 + xyzw.squaredNorm()));
        const Vec4c scaled = resolve_project(resolved_rescale(q, 2.0));
        EXPECT_LT((scaled - std::pow(2.0, 1.5) * xyzw).norm(), 1e-12 * (1.0 + xyzw.norm()));
    }
    EXPECT_THROW(ResolvedPoint::make(0.0, 0.0, 1.0, 1.0), DomainError);
}

TEST(Resolution, SameImageForEquivalentCoordinates) {
    const ResolvedPoint a = ResolvedPoint::make({0.5, 0.2}, {1.0, -0.3}, {0.7, 0.1}, {-0.2, 0.4});
    const cplx s{2.0, 1.0};
    const ResolvedPoint b = ResolvedPoint::make(a.u[0] * s, a.u[1] * s, a.w[0] / s, a.w[1] / s);
    EXPECT_LT((resolve_project(a) - resolve_project(b)).norm(), 1e-14);
}
