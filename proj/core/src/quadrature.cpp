#include <conifold/quadrature.hpp>

#include <conifold/error.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

namespace conifold::quad {

namespace {

constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double s = f(c - dx) + f(c + dx);
        kronrod += kWgk[j] * s;
        if (j % 2 == 1) gauss += kWg[j / 2] * s;
    }
    kronrod *= h;
    gauss *= h;
    return Panel{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
    if (a == b) return Result{0.0, 0.0, 0};
    std::priority_queue<Panel> queue;
    Panel first = gk15(f, a, b);
    double value = first.value;
    double error = first.error;
    queue.push(first);
    int intervals = 1;
    auto target = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(value)); };
    while (error > target()) {
        if (intervals >= opts.max_intervals || !std::isfinite(error)) {
            std::ostringstream os;
            os << "adaptive quadrature on [" << a << ", " << b << "] did not converge; "
               << "achieved error " << error << " vs target " << target();
            throw ConvergenceError(os.str(), error);
        }
        const Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = gk15(f, worst.a, mid);
        const Panel right = gk15(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }
    // Re-sum from the panels to avoid drift from the running updates.
    double sum = 0.0;
    double err = 0.0;
    while (!queue.empty()) {
        sum += queue.top().value;
        err += queue.top().error;
        queue.pop();
    }
    return Result{sum, err, intervals};
}

}  // namespace conifold::quad
