#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "ruinlab/errors.hpp"

namespace ruinlab {

struct BisectionResult {
    double x = 0.0;
    int iterations = 0;
};

// Bisection for a function with f(lo) and f(hi) of opposite (or zero) sign.
// Stops when the bracket width drops below x_tol. The returned x is the
// bracket midpoint.
template <std::invocable<double> F>
BisectionResult bisect(F&& f, double lo, double hi, double flo, double fhi,
                       double x_tol, int max_iter = 200) {
    BisectionResult r;
    for (int i = 0; i < max_iter && (hi - lo) > x_tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        if (!std::isfinite(fmid))
            throw numerical_error("bisect: non-finite value at x = " + std::to_string(mid));
        if ((fmid < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
            fhi = fmid;
        }
        r.iterations = i + 1;
    }
    r.x = 0.5 * (lo + hi);
    return r;
}

} // namespace ruinlab
