#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>

#include "ruinlab/errors.hpp"

namespace ruinlab {

namespace detail {

template <typename F>
double simpson(F&& f, double a, double fa, double b, double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson_rec(F&& f, double a, double fa, double b, double fb,
                            double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

// Adaptive Simpson on [a, b]. tol is absolute; callers scale it by an
// estimate of the integral's magnitude when they need relative accuracy.
template <std::invocable<double> F>
double integrate(F&& f, double a, double b, double tol = 1e-12, int max_depth = 60) {
    if (!(a < b)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw numerical_error("integrate: non-finite integrand on [" +
                              std::to_string(a) + ", " + std::to_string(b) + "]");
    const double whole = detail::simpson(f, a, fa, b, fb, m, fm);
    return detail::adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// Two-pass wrapper: a crude estimate fixes the absolute tolerance so the
// final answer meets the requested relative accuracy.
template <std::invocable<double> F>
double integrate_rel(F&& f, double a, double b, double rel_tol) {
    const double rough = integrate(f, a, b, 1e-6, 30);
    const double scale = std::max(std::fabs(rough), 1e-30);
    return integrate(f, a, b, rel_tol * scale, 60);
}

} // namespace ruinlab
