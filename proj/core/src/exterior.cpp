#include <conifold/exterior.hpp>

#include <bit>
#include <cmath>

namespace conifold::exterior {

Form Form::generator(int g, cplx c) {
    Form f;
    f.coeff_[1u << g] = c;
    return f;
}

Form Form::scalar(cplx c) {
    Form f;
    f.coeff_[0] = c;
    return f;
}

Form& Form::operator+=(const Form& o) {
    for (int i = 0; i < kMasks; ++i) coeff_[i] += o.coeff_[i];
    return *this;
}

Form& Form::operator-=(const Form& o) {
    for (int i = 0; i < kMasks; ++i) coeff_[i] -= o.coeff_[i];
    return *this;
}

Form& Form::operator*=(cplx s) {
    for (auto& c : coeff_) c *= s;
    return *this;
}

int merge_sign(std::uint32_t a, std::uint32_t b) {
    if (a & b) return 0;
    // Each generator of b passes every generator of a with a larger index.
    int swaps = 0;
    for (int g = 0; g < kGenerators; ++g) {
        if (b & (1u << g)) {
            swaps += std::popcount(a >> (g + 1));
        }
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

Form wedge(const Form& a, const Form& b) {
    Form out;
    for (std::uint32_t i = 0; i < kMasks; ++i) {
        if (a.coeff_[i] == cplx{0.0, 0.0}) continue;
        for (std::uint32_t j = 0; j < kMasks; ++j) {
            if (b.coeff_[j] == cplx{0.0, 0.0}) continue;
            const int s = merge_sign(i, j);
            if (s == 0) continue;
            out.coeff_[i | j] += static_cast<double>(s) * a.coeff_[i] * b.coeff_[j];
        }
    }
    return out;
}

double Form::norm() const {
    double s = 0.0;
    for (const auto& c : coeff_) s += std::norm(c);
    return std::sqrt(s);
}

namespace {

cplx det(const cplx m[3][3], int k) {
    if (k == 1) return m[0][0];
    if (k == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

cplx Form::evaluate(const cplx (*values)[kGenerators], int k) const {
    cplx total{0.0, 0.0};
    for (std::uint32_t mask = 0; mask < kMasks; ++mask) {
        if (std::popcount(mask) != k || coeff_[mask] == cplx{0.0, 0.0}) continue;
        int gens[3];
        int n = 0;
        for (int g = 0; g < kGenerators; ++g) {
            if (mask & (1u << g)) gens[n++] = g;
        }
        cplx m[3][3];
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) {
                m[r][c] = values[c][gens[r]];
            }
        }
        total += coeff_[mask] * (k == 0 ? cplx{1.0, 0.0} : det(m, k));
    }
    return total;
}

}  // namespace conifold::exterior
