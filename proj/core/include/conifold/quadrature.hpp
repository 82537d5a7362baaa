#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature.

#include <functional>

namespace conifold::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int intervals = 0;
};

// Throws ConvergenceError (carrying the achieved error estimate) when the
// interval budget runs out before max(abs_tol, rel_tol |value|) is met.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

}  // namespace conifold::quad
