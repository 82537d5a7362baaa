#include <conifold/polynomial.hpp>

#include <cmath>
#include <utility>

namespace conifold::poly {

namespace {

cplx ipow(cplx z, int e) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= z;
    return r;
}

cplx monomial(const Vec4c& z, const std::array<int, 4>& e) {
    cplx r{1.0, 0.0};
    for (int i = 0; i < 4; ++i) r *= ipow(z[i], e[i]);
    return r;
}

}  // namespace

Polynomial4::Polynomial4(std::vector<Term> terms) : terms_(std::move(terms)) {}

Polynomial4& Polynomial4::add(cplx coeff, std::array<int, 4> exps) {
    terms_.push_back(Term{coeff, exps});
    return *this;
}

cplx Polynomial4::value(const Vec4c& z) const {
    cplx s{0.0, 0.0};
    for (const auto& t : terms_) s += t.coeff * monomial(z, t.exps);
    return s;
}

double Polynomial4::magnitude(const Vec4c& z) const {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff * monomial(z, t.exps));
    return s;
}

Vec4c Polynomial4::gradient(const Vec4c& z) const {
    Vec4c g = Vec4c::Zero();
    for (const auto& t : terms_) {
        for (int i = 0; i < 4; ++i) {
            if (t.exps[i] == 0) continue;
            auto e = t.exps;
            --e[i];
            g[i] += t.coeff * static_cast<double>(t.exps[i]) * monomial(z, e);
        }
    }
    return g;
}

Mat4c Polynomial4::hessian(const Vec4c& z) const {
    Mat4c h = Mat4c::Zero();
    for (const auto& t : terms_) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                auto e = t.exps;
                double factor = e[i];
                if (e[i] == 0) continue;
                --e[i];
                if (e[j] == 0) continue;
                factor *= e[j];
                --e[j];
                h(i, j) += t.coeff * factor * monomial(z, e);
            }
        }
    }
    return h;
}

Polynomial4 conifold_quadric() {
    Polynomial4 p;
    p.add(1.0, {2, 0, 0, 0}).add(1.0, {0, 2, 0, 0}).add(1.0, {0, 0, 2, 0}).add(1.0, {0, 0, 0, 2});
    return p;
}

Polynomial4 dwork_affine(cplx psi) {
    Polynomial4 p;
    p.add(1.0, {0, 0, 0, 0});
    p.add(1.0, {5, 0, 0, 0}).add(1.0, {0, 5, 0, 0}).add(1.0, {0, 0, 5, 0}).add(1.0, {0, 0, 0, 5});
    p.add(-5.0 * psi, {1, 1, 1, 1});
    return p;
}

}  // namespace conifold::poly
