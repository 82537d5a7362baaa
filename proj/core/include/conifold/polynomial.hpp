#pragma once

// Sparse complex polynomials in four affine variables.

#include <Eigen/Core>

#include <array>
#include <complex>
#include <vector>

namespace conifold::poly {

using cplx = std::complex<double>;
using Vec4c = Eigen::Matrix<cplx, 4, 1>;
using Mat4c = Eigen::Matrix<cplx, 4, 4>;

struct Term {
    cplx coeff;
    std::array<int, 4> exps;
};

class Polynomial4 {
public:
    Polynomial4() = default;
    explicit Polynomial4(std::vector<Term> terms);

    Polynomial4& add(cplx coeff, std::array<int, 4> exps);

    const std::vector<Term>& terms() const { return terms_; }

    cplx value(const Vec4c& z) const;
    Vec4c gradient(const Vec4c& z) const;
    Mat4c hessian(const Vec4c& z) const;

    // sum over terms of |coeff z^e|; the natural size of value(z).
    double magnitude(const Vec4c& z) const;

private:
    std::vector<Term> terms_;
};

// sum z_i^2
Polynomial4 conifold_quadric();

// Affine chart Z_0 = 1 of sum Z_i^5 - 5 psi prod Z_i.
Polynomial4 dwork_affine(cplx psi = 1.0);

}  // namespace conifold::poly
