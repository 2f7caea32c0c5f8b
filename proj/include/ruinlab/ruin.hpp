#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "ruinlab/distribution.hpp"
#include "ruinlab/renewal.hpp"
#include "ruinlab/rootfind.hpp"

namespace ruinlab {

// Surplus-process inputs: initial capital, premium rate, claim stream.
struct RiskScenario {
    double u = 0.0;
    double c = 1.0;
    RegularDistribution interarrival;
    RegularDistribution severity;
    int k_cap = 10000;
};

inline void validate(const RiskScenario& scn, AlphaClip clip = {}) {
    validate(clip);
    if (!(scn.u >= 0.0)) throw validation_error("initial capital u must be nonnegative");
    if (!(scn.c > 0.0)) throw validation_error("premium rate c must be positive");
    validate(scn.interarrival);
    validate(scn.severity);
    if (scn.k_cap < 1) throw validation_error("k_cap must be >= 1");
    if (!(inverse_cdf(scn.interarrival, clip.delta) > 0.0))
        throw validation_error("interarrival support must be strictly positive");
}

// Quota-share terms. The retained premium rate is
// beta = [x(1 + rho) - (rho - theta)] c.
struct ReinsuranceTerms {
    double rho = 0.0;
    double theta = 0.0;
    double x = 1.0;

    // Wealth process with no reinsurance partner: full retention with
    // zero loads, so the retained premium rate is c itself.
    static ReinsuranceTerms no_reinsurance() { return {0.0, 0.0, 1.0}; }

    double beta(double c) const { return (x * (1.0 + rho) - (rho - theta)) * c; }
};

inline void validate(const ReinsuranceTerms& terms) {
    const bool no_reins = terms.rho == 0.0 && terms.theta == 0.0;
    if (!no_reins && !(terms.rho > terms.theta && terms.theta >= 0.0))
        throw validation_error("safety loads must satisfy rho > theta >= 0");
    if (!(terms.x >= 0.0 && terms.x <= 1.0))
        throw validation_error("retention x must lie in [0,1]");
}

// Liu-process perturbation of the surplus. as_printed scales the k-th
// increment quantile by k inside the k-th partial sum (quadratic growth);
// per_claim perturbs each summand by a unit-scale increment.
enum class PerturbationMode { as_printed, per_claim };

struct PerturbationSpec {
    bool enabled = false;
    PerturbationMode mode = PerturbationMode::as_printed;
};

struct UmrReport {
    double alpha = 0.0;        // the uncertain measure of ruin
    int k_at_max = 1;          // argmax index of the binding partial sum at the root
    bool converged_in_k = false; // change < 1e-8 when k_cap is doubled
    int iterations = 0;
};

// Quantile of the j-th retained partial sum:
// j (x Psi^{-1}(alpha) - beta Phi^{-1}(1 - alpha)).
inline double partial_sum_inverse(const RiskScenario& scn, const ReinsuranceTerms& terms,
                                  int j, double alpha, AlphaClip clip = {}) {
    validate(clip);
    if (j < 1 || j > scn.k_cap)
        throw validation_error("partial sum index must lie in [1, k_cap]");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw validation_error("quantile argument must lie in (0,1)");
    const double a = clip.clamp(alpha);
    return j * (terms.x * inverse_cdf(scn.severity, a) -
                terms.beta(scn.c) * inverse_cdf(scn.interarrival, 1.0 - a));
}

// Largest of the partial-sum quantiles at level 1 - alpha. Every partial
// sum shares the common factor q(alpha), so the max over j sits at j =
// k_cap when q > 0 and at j = 1 otherwise.
inline std::pair<double, int> maximal_partial_sum(const RiskScenario& scn,
                                                  const ReinsuranceTerms& terms, double alpha,
                                                  AlphaClip clip = {}) {
    const double a = clip.clamp(alpha);
    const double q = terms.x * inverse_cdf(scn.severity, 1.0 - a) -
                     terms.beta(scn.c) * inverse_cdf(scn.interarrival, a);
    if (q > 0.0) return {scn.k_cap * q, scn.k_cap};
    return {q, 1};
}

namespace detail {

struct UmrRoot {
    double alpha = 0.0;
    int k_at_max = 1;
    int iterations = 0;
};

// Root of g(alpha) = max_j candidate(j, alpha) - u, with g decreasing in
// alpha. g < 0 throughout reads as ruin measure 0, g > 0 throughout as 1.
template <typename G>
UmrRoot umr_root(G&& g_with_argmax, double u, AlphaClip clip) {
    const double lo = clip.delta;
    const double hi = 1.0 - clip.delta;
    UmrRoot r;
    const auto [vlo, klo] = g_with_argmax(lo);
    if (!std::isfinite(vlo))
        throw numerical_error("umr: non-finite partial sum at alpha = " + std::to_string(lo));
    if (vlo - u <= 0.0) {
        r.alpha = 0.0;
        r.k_at_max = klo;
        return r;
    }
    const auto [vhi, khi] = g_with_argmax(hi);
    if (!std::isfinite(vhi))
        throw numerical_error("umr: non-finite partial sum at alpha = " + std::to_string(hi));
    if (vhi - u >= 0.0) {
        r.alpha = 1.0;
        r.k_at_max = khi;
        return r;
    }
    auto g = [&](double a) { return g_with_argmax(a).first - u; };
    const auto root = bisect(g, lo, hi, vlo - u, vhi - u, 1e-10);
    r.alpha = root.x;
    r.iterations = root.iterations;
    r.k_at_max = g_with_argmax(root.x).second;
    return r;
}

inline UmrRoot umr_once(const RiskScenario& scn, const ReinsuranceTerms& terms, int k_cap,
                        AlphaClip clip) {
    RiskScenario s = scn;
    s.k_cap = k_cap;
    auto g = [&](double a) { return maximal_partial_sum(s, terms, a, clip); };
    return umr_root(g, scn.u, clip);
}

inline UmrRoot umr_perturbed_once(const RiskScenario& scn, const ReinsuranceTerms& terms,
                                  PerturbationMode mode, int k_cap, AlphaClip clip) {
    const double x = terms.x;
    const double beta = terms.beta(scn.c);
    // The perturbation breaks the common factor, so the max over j is an
    // explicit scan.
    auto g = [&](double a) -> std::pair<double, int> {
        const double ac = clip.clamp(a);
        const double sev_q = inverse_cdf(scn.severity, 1.0 - ac);
        const double int_q = inverse_cdf(scn.interarrival, ac);
        const double liu_unit = dist::kSqrt3OverPi * std::log(ac / (1.0 - ac));
        double best = 0.0;
        int best_j = 1;
        for (int j = 1; j <= k_cap; ++j) {
            const double liu = (mode == PerturbationMode::as_printed ? j : 1) * liu_unit;
            const double v = j * (x * sev_q - beta * int_q - liu);
            if (j == 1 || v > best) {
                best = v;
                best_j = j;
            }
        }
        return {best, best_j};
    };
    return umr_root(g, scn.u, clip);
}

} // namespace detail

// Uncertain measure of ruin: the root alpha of
// max_j { j (x Psi^{-1}(1-alpha) - beta Phi^{-1}(alpha)) } - u = 0.
inline UmrReport umr(const RiskScenario& scn, const ReinsuranceTerms& terms,
                     AlphaClip clip = {}) {
    validate(scn, clip);
    validate(terms);
    const auto root = detail::umr_once(scn, terms, scn.k_cap, clip);
    const auto doubled = detail::umr_once(scn, terms, 2 * scn.k_cap, clip);
    UmrReport rep;
    rep.alpha = root.alpha;
    rep.k_at_max = root.k_at_max;
    rep.iterations = root.iterations;
    rep.converged_in_k = std::fabs(doubled.alpha - root.alpha) < 1e-8;
    return rep;
}

// Liu-perturbed UMR. With the perturbation disabled this is umr itself.
inline UmrReport umr_perturbed(const RiskScenario& scn, const ReinsuranceTerms& terms,
                               const PerturbationSpec& pert, AlphaClip clip = {}) {
    if (!pert.enabled) return umr(scn, terms, clip);
    validate(scn, clip);
    validate(terms);
    const auto root = detail::umr_perturbed_once(scn, terms, pert.mode, scn.k_cap, clip);
    const auto doubled =
        detail::umr_perturbed_once(scn, terms, pert.mode, 2 * scn.k_cap, clip);
    UmrReport rep;
    rep.alpha = root.alpha;
    rep.k_at_max = root.k_at_max;
    rep.iterations = root.iterations;
    rep.converged_in_k = std::fabs(doubled.alpha - root.alpha) < 1e-8;
    return rep;
}

// Discretized sup/max ruin index:
// max_{k <= k_cap} sup_z { Phi(z/(k+1)) ^ (1 - Psi((u + beta z)/(x k))) }.
// A grid approximation kept as a reference oracle; O(k_cap * z_grid).
inline double ruin_index_reference(const RiskScenario& scn, const ReinsuranceTerms& terms,
                                   int z_grid, double z_max, AlphaClip clip = {}) {
    validate(scn, clip);
    validate(terms);
    if (!(terms.x > 0.0))
        throw validation_error("ruin_index_reference requires x > 0; the x = 0 "
                               "deterministic-drift case is handled by the caller");
    if (z_grid < 1000) throw validation_error("z_grid must be >= 1000");
    if (!(z_max > 0.0)) throw validation_error("z_max must be positive");
    const double beta = terms.beta(scn.c);
    double best = 0.0;
    for (int k = 1; k <= scn.k_cap; ++k) {
        for (int i = 0; i < z_grid; ++i) {
            const double z = z_max * i / (z_grid - 1.0);
            const double count_term = cdf(scn.interarrival, z / (k + 1.0));
            const double sev_arg = (scn.u + beta * z) / (terms.x * k);
            const double term = std::min(count_term, 1.0 - cdf(scn.severity, sev_arg));
            best = std::max(best, term);
        }
    }
    return best;
}

// Default z range for the reference oracle; beyond it the severity
// argument is deep in its upper tail for every k <= k_cap.
inline double default_z_max(const RiskScenario& scn, AlphaClip clip = {}) {
    return 10.0 * scn.u / scn.c + 10.0 * scn.k_cap * expected_value(scn.interarrival, clip);
}

// Net-profit checks on the premium rate. paper_condition is the printed
// c > E[eta] E[xi]; rate_condition is the per-period form c E[xi] > E[eta].
struct PremiumFeasibility {
    bool paper_condition = false;
    bool rate_condition = false;
};

inline PremiumFeasibility premium_feasibility(const RiskScenario& scn, AlphaClip clip = {}) {
    validate(scn, clip);
    const double mean_interarrival = expected_value(scn.interarrival, clip);
    const double mean_severity = expected_value(scn.severity, clip);
    return {scn.c > mean_severity * mean_interarrival,
            scn.c * mean_interarrival > mean_severity};
}

} // namespace ruinlab
