#include <conifold_oracles/oracles.hpp>

#include <cmath>
#include <cstdlib>
#include <utility>

namespace conifold::oracles {

int bareiss_rank(IntMatrix m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m.front().size();
    std::int64_t prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

bool friedman_feasible_bruteforce(const IntMatrix& rows) {
    const std::size_t n = rows.size();
    if (n == 0) return true;
    const int base = bareiss_rank(rows);
    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix aug = rows;
        for (std::size_t r = 0; r < n; ++r) aug[r].push_back(r == i ? 1 : 0);
        if (bareiss_rank(aug) == base) return false;
    }
    return true;
}

double cubic_root_bisection(double tau) {
    const double t2 = tau * tau;
    auto f = [&](double g) { return g * g * (g + 6.0) - t2; };
    double lo = 0.0;
    double hi = 1.0;
    while (f(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    double g = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double d = g * (3.0 * g + 12.0);
        if (d == 0.0) break;
        const double next = g - f(g) / d;
        if (next < lo || next > hi) break;
        g = next;
    }
    return g;
}

long double chi_line_bundle_product(int n, long m) {
    long double num = 1.0L;
    long double den = 1.0L;
    for (int i = 1; i <= n; ++i) {
        num *= static_cast<long double>(m + i);
        den *= i;
    }
    return num / den;
}

}  // namespace conifold::oracles
