#pragma once

#include <gmpxx.h>

#include <string>

namespace conifold {

using BigInt = mpz_class;
using Rational = mpq_class;

// Generalized binomial coefficient C(m, k) = m (m-1) ... (m-k+1) / k!,
// a degree-k polynomial in m, defined for every integer m (negative included).
BigInt binomial_poly(const BigInt& m, int k);

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const Rational& x) { return x.get_str(); }

}  // namespace conifold
