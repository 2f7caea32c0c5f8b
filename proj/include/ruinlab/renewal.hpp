#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "ruinlab/distribution.hpp"

namespace ruinlab {

// Interarrival (time) and severity (money) laws of the claim stream, plus
// the truncation bound for max-over-k formulas.
struct RenewalSpec {
    RegularDistribution interarrival;
    RegularDistribution severity;
    int k_cap = 10000;
};

inline void validate(const RenewalSpec& spec, AlphaClip clip = {}) {
    validate(clip);
    validate(spec.interarrival);
    validate(spec.severity);
    if (spec.k_cap < 1) throw validation_error("k_cap must be >= 1");
    if (!(inverse_cdf(spec.interarrival, clip.delta) > 0.0))
        throw validation_error("interarrival support must be strictly positive");
}

// One increment of a Liu process over a window of length t: a normal
// uncertain variable with zero expected value.
struct LiuIncrement {
    double t = 1.0;
};

inline void validate(const LiuIncrement& inc) {
    if (!(inc.t > 0.0)) throw validation_error("Liu increment scale must be positive");
}

inline double liu_increment_inverse(const LiuIncrement& inc, double alpha) {
    validate(inc);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw validation_error("quantile argument must lie in (0,1), got " +
                               std::to_string(alpha));
    if (alpha == 0.5) return 0.0;
    // Mirror the lower half so liu(alpha) + liu(1 - alpha) is exactly 0.
    if (alpha < 0.5) return -liu_increment_inverse(inc, 1.0 - alpha);
    return inc.t * dist::kSqrt3OverPi * std::log(alpha / (1.0 - alpha));
}

// Distribution of the claim count N_t in x: 1 - Phi(t / (floor(x) + 1)),
// a right-continuous step function.
inline double renewal_count_cdf(const RenewalSpec& spec, double t, double x) {
    if (!(t > 0.0)) throw validation_error("renewal_count_cdf: t must be positive");
    if (x < 0.0) return 0.0;
    const double n = std::floor(x);
    return 1.0 - cdf(spec.interarrival, t / (n + 1.0));
}

// Distribution of the renewal reward R_t in x: max over k >= 0 of
// (1 - Phi(t/(k+1))) ^ Psi(x/k), with the k = 0 term reading Psi(x/0) = 1
// (the empty sum never exceeds a nonnegative x). The max is truncated once
// the count term saturates, since it increases in k and the Psi term only
// shrinks the min.
inline double renewal_reward_cdf(const RenewalSpec& spec, double t, double x) {
    if (!(t > 0.0)) throw validation_error("renewal_reward_cdf: t must be positive");
    if (!(x >= 0.0)) throw validation_error("renewal_reward_cdf: x must be nonnegative");
    double best = 1.0 - cdf(spec.interarrival, t); // k = 0, empty sum
    constexpr long hard_cap = 10'000'000;
    for (long k = 1; k <= hard_cap; ++k) {
        const double count_term =
            1.0 - cdf(spec.interarrival, t / (static_cast<double>(k) + 1.0));
        const double sev_term = cdf(spec.severity, x / static_cast<double>(k));
        best = std::max(best, std::min(count_term, sev_term));
        if (count_term >= 1.0 - 1e-12) break; // count term saturated
        if (sev_term <= best) break;          // severity term only shrinks from here
    }
    return best;
}

// lim E[N_t]/t = integral over (0,1) of 1 / Phi^{-1}(alpha).
inline double long_run_renewal_rate(const RenewalSpec& spec, AlphaClip clip = {}) {
    validate(clip);
    const double low_q = inverse_cdf(spec.interarrival, clip.delta);
    if (!(low_q > 0.0))
        throw numerical_error("long_run_renewal_rate: interarrival support touches 0");
    // A bounded left endpoint at 0 makes the 1/quantile integral diverge
    // (the lognormal endpoint also sits at 0, but integrably so).
    if (const auto* lin = std::get_if<dist::Linear>(&spec.interarrival); lin && lin->a <= 0.0)
        throw numerical_error("long_run_renewal_rate: interarrival support touches 0");
    if (const auto* pq = std::get_if<dist::PiecewiseQuantile>(&spec.interarrival);
        pq && pq->q.front() <= 0.0)
        throw numerical_error("long_run_renewal_rate: interarrival support touches 0");
    auto f = [&](double a) { return 1.0 / inverse_cdf(spec.interarrival, a); };
    const double body = integrate_rel(f, clip.delta, 1.0 - clip.delta, 1e-10);
    // Clipped tails, rectangle at the edge values; O(delta) in total.
    return body + clip.delta * (f(clip.delta) + f(1.0 - clip.delta));
}

// Quantile of the limiting reward rate R_t/t -> eta_1 / xi_1, increasing
// in the reward and decreasing in the interarrival.
inline double reward_rate_inverse(const RenewalSpec& spec, double alpha, AlphaClip clip = {}) {
    validate(clip);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw validation_error("quantile argument must lie in (0,1), got " +
                               std::to_string(alpha));
    const double a = clip.clamp(alpha);
    const double den = inverse_cdf(spec.interarrival, 1.0 - a);
    if (!(den > 0.0))
        throw numerical_error("reward_rate_inverse: interarrival support must be positive");
    return inverse_cdf(spec.severity, a) / den;
}

} // namespace ruinlab
