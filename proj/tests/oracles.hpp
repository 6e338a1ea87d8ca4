// Self-contained quadrature helpers used to compute reference values inside
// the tests, independent of the library's own grids.
#pragma once

#include <cmath>
#include <stdexcept>

namespace oracles {

// Composite Simpson rule on [a, b] with n panels (n even).
template <typename F>
double simpson(F f, double a, double b, int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("simpson: n must be even and >= 2");
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Tensor-product Simpson rule on [ax, bx] x [ay, by].
template <typename F>
double simpson2d(F f, double ax, double bx, int nx, double ay, double by, int ny) {
    auto inner = [&](double x) {
        return simpson([&](double y) { return f(x, y); }, ay, by, ny);
    };
    return simpson(inner, ax, bx, nx);
}

inline double normal_pdf(double x, double mean, double variance) {
    const double d = x - mean;
    return std::exp(-d * d / (2.0 * variance)) / std::sqrt(2.0 * M_PI * variance);
}

}  // namespace oracles
