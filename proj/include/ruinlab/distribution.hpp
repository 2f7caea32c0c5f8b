#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ruinlab/errors.hpp"
#include "ruinlab/quadrature.hpp"

namespace ruinlab {

// Quantile arguments are evaluated on [delta, 1 - delta]; the normal and
// lognormal quantiles diverge at 0 and 1.
struct AlphaClip {
    double delta = 1e-9;

    double clamp(double alpha) const { return std::clamp(alpha, delta, 1.0 - delta); }
};

inline void validate(const AlphaClip& clip) {
    if (!(clip.delta > 0.0 && clip.delta < 1e-3))
        throw validation_error("alpha clip delta must lie in (0, 1e-3), got " +
                               std::to_string(clip.delta));
}

namespace dist {

// sqrt(3)/pi, the slope constant of the logistic-style quantile.
inline constexpr double kSqrt3OverPi = std::numbers::sqrt3 / std::numbers::pi;

struct Linear {
    double a;
    double b;
};

struct Normal {
    double e;
    double sigma;
};

struct Lognormal {
    double e;
    double sigma;
};

// Elicited quantiles, linearly interpolated; constant beyond the grid.
struct PiecewiseQuantile {
    std::vector<double> alpha;
    std::vector<double> q;
};

} // namespace dist

using RegularDistribution =
    std::variant<dist::Linear, dist::Normal, dist::Lognormal, dist::PiecewiseQuantile>;

inline void validate(const RegularDistribution& d) {
    std::visit(
        [](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, dist::Linear>) {
                if (!(v.a < v.b))
                    throw validation_error("linear distribution requires a < b");
            } else if constexpr (std::is_same_v<T, dist::Normal> ||
                                 std::is_same_v<T, dist::Lognormal>) {
                if (!(v.sigma > 0.0))
                    throw validation_error("sigma must be positive");
            } else {
                if (v.alpha.size() != v.q.size() || v.alpha.size() < 2)
                    throw validation_error("quantile grid needs >= 2 matching (alpha, q) pairs");
                for (std::size_t i = 0; i < v.alpha.size(); ++i) {
                    if (!(v.alpha[i] > 0.0 && v.alpha[i] < 1.0))
                        throw validation_error("quantile grid alpha values must lie in (0,1)");
                    if (i > 0 && !(v.alpha[i] > v.alpha[i - 1] && v.q[i] > v.q[i - 1]))
                        throw validation_error(
                            "quantile grid must be strictly increasing in alpha and q");
                }
            }
        },
        d);
}

inline double cdf(const RegularDistribution& d, double x) {
    return std::visit(
        [x](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, dist::Linear>) {
                if (x <= v.a) return 0.0;
                if (x >= v.b) return 1.0;
                return (x - v.a) / (v.b - v.a);
            } else if constexpr (std::is_same_v<T, dist::Normal>) {
                return 1.0 / (1.0 + std::exp((v.e - x) / (dist::kSqrt3OverPi * v.sigma)));
            } else if constexpr (std::is_same_v<T, dist::Lognormal>) {
                if (x < 0.0) return 0.0;
                if (x == 0.0) return 0.0;
                return 1.0 / (1.0 + std::exp((v.e - std::log(x)) / (dist::kSqrt3OverPi * v.sigma)));
            } else {
                if (x <= v.q.front()) return v.alpha.front();
                if (x >= v.q.back()) return v.alpha.back();
                const auto it = std::upper_bound(v.q.begin(), v.q.end(), x);
                const std::size_t i = static_cast<std::size_t>(it - v.q.begin());
                const double t = (x - v.q[i - 1]) / (v.q[i] - v.q[i - 1]);
                return v.alpha[i - 1] + t * (v.alpha[i] - v.alpha[i - 1]);
            }
        },
        d);
}

inline double inverse_cdf(const RegularDistribution& d, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw validation_error("quantile argument must lie in [0,1], got " +
                               std::to_string(alpha));
    return std::visit(
        [alpha](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, dist::Linear>) {
                return v.a + (v.b - v.a) * alpha;
            } else if constexpr (std::is_same_v<T, dist::Normal>) {
                return v.e + v.sigma * dist::kSqrt3OverPi * std::log(alpha / (1.0 - alpha));
            } else if constexpr (std::is_same_v<T, dist::Lognormal>) {
                return std::exp(v.e +
                                v.sigma * dist::kSqrt3OverPi * std::log(alpha / (1.0 - alpha)));
            } else {
                if (alpha <= v.alpha.front()) return v.q.front();
                if (alpha >= v.alpha.back()) return v.q.back();
                const auto it = std::upper_bound(v.alpha.begin(), v.alpha.end(), alpha);
                const std::size_t i = static_cast<std::size_t>(it - v.alpha.begin());
                const double t = (alpha - v.alpha[i - 1]) / (v.alpha[i] - v.alpha[i - 1]);
                return v.q[i - 1] + t * (v.q[i] - v.q[i - 1]);
            }
        },
        d);
}

namespace detail {

// Integral of the quantile over [0, delta] and [1 - delta, 1], which the
// clipped quadrature omits. The normal tails cancel to 2*e*delta by
// symmetry; the lognormal upper tail behaves like (1 - alpha)^(-s) and is
// integrated by its leading expansion; the bounded variants contribute a
// trapezoid sliver.
inline double quantile_tail_correction(const RegularDistribution& d, double delta) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, dist::Normal>) {
                return 2.0 * v.e * delta;
            } else if constexpr (std::is_same_v<T, dist::Lognormal>) {
                const double s = v.sigma * dist::kSqrt3OverPi;
                if (s >= 1.0)
                    throw numerical_error("lognormal mean is infinite for sigma >= pi/sqrt(3)");
                const double scale = std::exp(v.e);
                const double low = std::pow(delta, 1.0 + s) / (1.0 + s) +
                                   s * std::pow(delta, 2.0 + s) / (2.0 + s);
                const double high = std::pow(delta, 1.0 - s) / (1.0 - s) -
                                    s * std::pow(delta, 2.0 - s) / (2.0 - s);
                return scale * (low + high);
            } else {
                const RegularDistribution rd{v};
                const double low =
                    0.5 * delta * (inverse_cdf(rd, 0.0) + inverse_cdf(rd, delta));
                const double high =
                    0.5 * delta * (inverse_cdf(rd, 1.0 - delta) + inverse_cdf(rd, 1.0));
                return low + high;
            }
        },
        d);
}

} // namespace detail

// E[xi] = integral of the quantile function over (0,1).
inline double expected_value(const RegularDistribution& d, AlphaClip clip = {}) {
    validate(clip);
    if (const auto* ln = std::get_if<dist::Lognormal>(&d)) {
        if (ln->sigma * dist::kSqrt3OverPi >= 1.0)
            throw numerical_error("lognormal mean is infinite for sigma >= pi/sqrt(3)");
    }
    const double body = integrate_rel([&](double a) { return inverse_cdf(d, a); },
                                      clip.delta, 1.0 - clip.delta, 1e-10);
    return body + detail::quantile_tail_correction(d, clip.delta);
}

// V[xi] under the quantile stipulation: integral of (quantile - mean)^2.
inline double variance(const RegularDistribution& d, AlphaClip clip = {}) {
    if (const auto* ln = std::get_if<dist::Lognormal>(&d)) {
        if (ln->sigma * dist::kSqrt3OverPi >= 0.5)
            throw numerical_error("lognormal variance is infinite for sigma >= pi/(2 sqrt(3))");
    }
    const double mean = expected_value(d, clip);
    auto sq = [&](double a) {
        const double r = inverse_cdf(d, a) - mean;
        return r * r;
    };
    const double body = integrate_rel(sq, clip.delta, 1.0 - clip.delta, 1e-10);
    // Tail slivers of the squared deviation, rectangle at the clipped edge.
    return body + clip.delta * (sq(clip.delta) + sq(1.0 - clip.delta));
}

// Integral over (0,1) of num_quantile(alpha) / den_quantile(1 - alpha);
// the long-run reward-to-interarrival rate.
inline double expected_ratio(const RegularDistribution& num, const RegularDistribution& den,
                             AlphaClip clip = {}) {
    validate(clip);
    if (!(inverse_cdf(den, clip.delta) > 0.0))
        throw numerical_error("expected_ratio: denominator support must be strictly positive");
    auto ratio = [&](double a) { return inverse_cdf(num, a) / inverse_cdf(den, 1.0 - a); };
    const double body = integrate_rel(ratio, clip.delta, 1.0 - clip.delta, 1e-9);

    const double delta = clip.delta;
    double high;
    if (const auto* ln = std::get_if<dist::Lognormal>(&num)) {
        // num quantile ~ exp(e) (1-alpha)^(-s) near alpha = 1 while the
        // denominator quantile tends to its lower endpoint.
        const double s = ln->sigma * dist::kSqrt3OverPi;
        if (s >= 1.0)
            throw numerical_error("lognormal mean is infinite for sigma >= pi/sqrt(3)");
        high = std::exp(ln->e) *
               (std::pow(delta, 1.0 - s) / (1.0 - s) -
                s * std::pow(delta, 2.0 - s) / (2.0 - s)) /
               inverse_cdf(den, delta);
    } else {
        high = delta * ratio(1.0 - delta);
    }
    const double low = delta * ratio(delta);
    return body + low + high;
}

} // namespace ruinlab
