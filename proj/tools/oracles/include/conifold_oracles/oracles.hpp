#pragma once

// Independent reference implementations used to cross-check the library.
// Each one takes a different route to the same answer.

#include <cstdint>
#include <vector>

namespace conifold::oracles {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

// Rank over Q by fraction-free (Bareiss) elimination in 64-bit integers.
// Intended for the small 0/+-1 matrices of the brute-force audit.
int bareiss_rank(IntMatrix m);

// Feasibility of sum_i lambda_i row_i = 0 with every lambda_i != 0: feasible
// iff no standard basis vector e_i lies in the column space of M.
bool friedman_feasible_bruteforce(const IntMatrix& rows);

// Root gamma >= 0 of gamma^3 + 6 gamma^2 = tau^2 by bisection followed by
// safeguarded Newton steps.
double cubic_root_bisection(double tau);

// chi(O_{P^n}(m)) as prod_{i=1..n} (m + i) / n!, in long double; exact for
// the small arguments the tests use.
long double chi_line_bundle_product(int n, long m);

}  // namespace conifold::oracles
