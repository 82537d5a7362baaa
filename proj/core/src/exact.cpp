#include <conifold/exact.hpp>

#include <conifold/error.hpp>

namespace conifold {

BigInt binomial_poly(const BigInt& m, int k) {
    if (k < 0) {
        throw DomainError("binomial_poly: k must be non-negative");
    }
    BigInt num = 1;
    BigInt den = 1;
    for (int i = 0; i < k; ++i) {
        num *= m - i;
        den *= i + 1;
    }
    // k consecutive integers are divisible by k!.
    BigInt out;
    mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return out;
}

}  // namespace conifold
