#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ruinlab/distribution.hpp"
#include "ruinlab/rootfind.hpp"

namespace ruinlab {

// f(x_1, ..., x_n), strictly increasing in the first num_increasing
// arguments and strictly decreasing in the rest.
struct MonotoneFunctionSpec {
    std::size_t arity = 1;
    std::size_t num_increasing = 1;
    std::function<double(std::span<const double>)> eval;
};

inline void validate(const MonotoneFunctionSpec& spec) {
    if (spec.arity == 0 || spec.num_increasing > spec.arity || !spec.eval)
        throw validation_error("monotone spec needs arity >= 1, num_increasing <= arity, "
                               "and an evaluator");
}

// Quantile of f(xi_1, ..., xi_n): f at alpha-quantiles for increasing
// arguments and (1 - alpha)-quantiles for decreasing ones.
inline double monotone_inverse(const MonotoneFunctionSpec& spec,
                               std::span<const RegularDistribution> dists, double alpha) {
    validate(spec);
    if (dists.size() != spec.arity)
        throw validation_error("monotone_inverse: got " + std::to_string(dists.size()) +
                               " distributions for arity " + std::to_string(spec.arity));
    std::vector<double> args(spec.arity);
    for (std::size_t i = 0; i < spec.arity; ++i)
        args[i] = inverse_cdf(dists[i], i < spec.num_increasing ? alpha : 1.0 - alpha);
    return spec.eval(args);
}

// Crisp measure of {f(xi_1, ..., xi_n) <= 0}: the root alpha of the
// quantile composition, which is strictly increasing in alpha. Returns 1
// when the composition is negative throughout and 0 when positive
// throughout.
inline double crisp_measure_nonpositive(const MonotoneFunctionSpec& spec,
                                        std::span<const RegularDistribution> dists,
                                        AlphaClip clip = {}) {
    validate(clip);
    auto g = [&](double a) { return monotone_inverse(spec, dists, a); };
    const double lo = clip.delta;
    const double hi = 1.0 - clip.delta;
    const double glo = g(lo);
    const double ghi = g(hi);
    if (!std::isfinite(glo))
        throw numerical_error("crisp_measure_nonpositive: non-finite value at alpha = " +
                              std::to_string(lo));
    if (!std::isfinite(ghi))
        throw numerical_error("crisp_measure_nonpositive: non-finite value at alpha = " +
                              std::to_string(hi));
    if (ghi < 0.0) return 1.0; // negative throughout
    if (glo > 0.0) return 0.0; // positive throughout
    return bisect(g, lo, hi, glo, ghi, 1e-10).x;
}

} // namespace ruinlab
