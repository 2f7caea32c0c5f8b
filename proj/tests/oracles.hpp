#pragma once

// Test-side oracles, independent of the library's quadrature and root
// paths: composite trapezoid integration with a power substitution that
// removes the lognormal quantile's endpoint singularity, and dense-grid
// argmin root location.

#include <cmath>
#include <cstddef>
#include <functional>

namespace oracles {

// Composite trapezoid of f on [a, b] with n panels.
template <typename F>
double trapezoid(F&& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double acc = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < n; ++i) acc += f(a + h * static_cast<double>(i));
    return acc * h;
}

// Integral over (0,1) of g(alpha) with g ~ limit_coeff * (1-alpha)^(-s)
// near alpha = 1, 0 <= s < 1, and g bounded near 0. The caller supplies
// the lower half as g_lower(alpha) on (0, 1/2] and the upper half as
// g_upper(u) with u = 1 - alpha on (0, 1/2], so tail evaluations stay
// well-conditioned. The substitution u = w^(1/(1-s)) bounds the upper
// integrand, whose w = 0 limit is limit_coeff / (1-s).
inline double integrate_upper_singular(const std::function<double(double)>& g_lower,
                                       const std::function<double(double)>& g_upper,
                                       double s, double limit_coeff, std::size_t points) {
    const std::size_t n = points / 2;
    const double lower = trapezoid(g_lower, 1e-15, 0.5, n);
    const double p = 1.0 / (1.0 - s);
    auto smooth = [&](double w) {
        if (w <= 0.0) return limit_coeff * p;
        return g_upper(std::pow(w, p)) * p * std::pow(w, p - 1.0);
    };
    const double upper = trapezoid(smooth, 0.0, std::pow(0.5, 1.0 - s), n);
    return lower + upper;
}

} // namespace oracles
