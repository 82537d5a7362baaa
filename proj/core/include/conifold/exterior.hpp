#pragma once

// Exterior algebra on the six complex coordinate differentials of a chart of
// a hypersurface in C^4: dz_a, dz_b, dz_c, conj(dz_a), conj(dz_b), conj(dz_c)
// where (a, b, c) are the three coordinates other than the chart's solved one.
// Generator g < 3 is a holomorphic differential, g >= 3 its conjugate.
// Basis monomials are encoded as bitmasks over the generators in increasing
// order.

#include <array>
#include <complex>
#include <cstdint>

namespace conifold::exterior {

using cplx = std::complex<double>;

inline constexpr int kGenerators = 6;
inline constexpr int kMasks = 1 << kGenerators;

class Form {
public:
    Form() { coeff_.fill(cplx{0.0, 0.0}); }

    static Form generator(int g, cplx c = 1.0);
    static Form scalar(cplx c);

    cplx& operator[](std::uint32_t mask) { return coeff_[mask]; }
    const cplx& operator[](std::uint32_t mask) const { return coeff_[mask]; }

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(cplx s);

    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, cplx s) { return a *= s; }
    friend Form operator*(cplx s, Form a) { return a *= s; }

    friend Form wedge(const Form& a, const Form& b);

    // Euclidean norm of the coefficient vector.
    double norm() const;

    // Value on k vectors; values[v][g] = generator g applied to vector v.
    cplx evaluate(const cplx (*values)[kGenerators], int k) const;

private:
    std::array<cplx, kMasks> coeff_;
};

// Sign of moving the generators of `b` past those of `a` into sorted order,
// or 0 when the masks overlap.
int merge_sign(std::uint32_t a, std::uint32_t b);

}  // namespace conifold::exterior
