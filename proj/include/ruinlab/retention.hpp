#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ruinlab/ruin.hpp"

namespace ruinlab {

// Maximize the long-run wealth rate over the retention x in [0,1] subject
// to UMR <= epsilon.
struct RetentionProblem {
    RiskScenario scenario;
    double rho = 0.0;
    double theta = 0.0;
    double epsilon = 0.005;
    PerturbationSpec perturbation;
    // Pinned retention for UMR-only evaluations (sweeps without a
    // retention solve); ignored by the optimizer.
    std::optional<double> fixed_x;

    bool has_loads() const { return rho > theta && theta >= 0.0; }
};

inline void validate(const RetentionProblem& p, AlphaClip clip = {}) {
    validate(p.scenario, clip);
    if (!(p.rho > p.theta && p.theta >= 0.0))
        throw validation_error("safety loads must satisfy rho > theta >= 0");
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0))
        throw validation_error("epsilon must lie in (0,1)");
}

enum class RetentionMethod { boundary_bisection, grid_scan };

struct RetentionResult {
    double x_star = 1.0;
    double objective = 0.0;
    double umr_at_x = 0.0;
    bool binding = false;
    RetentionMethod method = RetentionMethod::boundary_bisection;
};

inline constexpr double kFeasibilityTol = 1e-6;

namespace detail {

inline ReinsuranceTerms terms_at(const RetentionProblem& p, double x) {
    return {p.rho, p.theta, x};
}

inline double umr_at(const RetentionProblem& p, double x, AlphaClip clip) {
    return umr_perturbed(p.scenario, terms_at(p, x), p.perturbation, clip).alpha;
}

} // namespace detail

// Long-run wealth rate at retention x, linear in x:
// [x(1+rho) - (rho-theta)] c - x * expected_ratio(severity, interarrival).
// Callers sweeping x should compute the ratio once via wealth_rate_slope.
inline double wealth_rate_slope(const RetentionProblem& p, AlphaClip clip = {}) {
    return (1.0 + p.rho) * p.scenario.c -
           expected_ratio(p.scenario.severity, p.scenario.interarrival, clip);
}

inline double wealth_rate(const RetentionProblem& p, double x, AlphaClip clip = {}) {
    if (!(x >= 0.0 && x <= 1.0)) throw validation_error("retention x must lie in [0,1]");
    return wealth_rate_slope(p, clip) * x - (p.rho - p.theta) * p.scenario.c;
}

// Grid-scan fallback: maximize the objective over feasible points of a
// uniform x grid.
inline RetentionResult optimal_retention_grid_scan(const RetentionProblem& p,
                                                   int points = 1001, AlphaClip clip = {}) {
    validate(p, clip);
    const double slope = wealth_rate_slope(p, clip);
    const double intercept = -(p.rho - p.theta) * p.scenario.c;
    std::optional<RetentionResult> best;
    double min_umr = 1.0;
    for (int i = 0; i < points; ++i) {
        const double x = static_cast<double>(i) / (points - 1);
        const double a = detail::umr_at(p, x, clip);
        min_umr = std::min(min_umr, a);
        if (a > p.epsilon + kFeasibilityTol) continue;
        const double obj = slope * x + intercept;
        if (!best || obj > best->objective) {
            best = RetentionResult{x, obj, a, std::fabs(a - p.epsilon) <= kFeasibilityTol,
                                   RetentionMethod::grid_scan};
        }
    }
    if (!best)
        throw no_feasible_retention("no retention on the grid satisfies UMR <= epsilon",
                                    min_umr);
    return *best;
}

// Boundary bisection when UMR(x) is nondecreasing and the objective slope
// is positive: the optimum is the largest feasible x.
inline RetentionResult optimal_retention(const RetentionProblem& p, AlphaClip clip = {}) {
    validate(p, clip);
    const double slope = wealth_rate_slope(p, clip);
    const double intercept = -(p.rho - p.theta) * p.scenario.c;

    constexpr int grid_n = 21;
    double grid_umr[grid_n];
    bool monotone = true;
    double min_umr = 1.0;
    for (int i = 0; i < grid_n; ++i) {
        const double x = static_cast<double>(i) / (grid_n - 1);
        grid_umr[i] = detail::umr_at(p, x, clip);
        min_umr = std::min(min_umr, grid_umr[i]);
        if (i > 0 && grid_umr[i] < grid_umr[i - 1] - 1e-12) monotone = false;
    }
    if (!monotone || slope <= 0.0) return optimal_retention_grid_scan(p, 1001, clip);

    if (grid_umr[grid_n - 1] <= p.epsilon) {
        return {1.0, slope + intercept, grid_umr[grid_n - 1],
                std::fabs(grid_umr[grid_n - 1] - p.epsilon) <= kFeasibilityTol,
                RetentionMethod::boundary_bisection};
    }
    // Largest feasible grid point brackets the constraint boundary below.
    int lo_idx = -1;
    for (int i = grid_n - 1; i >= 0; --i) {
        if (grid_umr[i] <= p.epsilon) {
            lo_idx = i;
            break;
        }
    }
    if (lo_idx < 0)
        throw no_feasible_retention("UMR exceeds epsilon over the whole retention grid",
                                    min_umr);
    double lo = static_cast<double>(lo_idx) / (grid_n - 1);
    double hi = static_cast<double>(lo_idx + 1) / (grid_n - 1);
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (detail::umr_at(p, mid, clip) <= p.epsilon)
            lo = mid;
        else
            hi = mid;
    }
    // Return the feasible end of the bracket.
    const double x_star = lo;
    const double a = detail::umr_at(p, x_star, clip);
    return {x_star, slope * x_star + intercept, a, true, RetentionMethod::boundary_bisection};
}

// One row of a parameter sweep. Failed rows carry an error message and
// leave the numeric fields unset.
struct SweepRow {
    double axis_value = 0.0;
    std::optional<double> umr;
    std::optional<double> x_star;
    std::optional<double> objective;
    std::optional<bool> converged_in_k;
    std::string error;
};

enum class SweepAxis { u, k_cap, x };

// Sweeps the scenario along one axis. The UMR column is always computed;
// the retention solve runs for the u and k_cap axes. Rows are independent
// and fan out over `jobs` workers, output order follows the grid.
inline std::vector<SweepRow> sweep(const RetentionProblem& p, SweepAxis axis,
                                   const std::vector<double>& grid, unsigned jobs = 1,
                                   AlphaClip clip = {}) {
    validate(p.scenario, clip);
    if (grid.empty()) throw validation_error("sweep grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw validation_error("sweep grid must be strictly increasing");

    // The retention solve runs on the u and k_cap axes when loads are
    // configured; otherwise rows carry the UMR at the pinned retention.
    const bool solve_retention = axis != SweepAxis::x && p.has_loads();

    // Cache the ratio integral before the fan-out.
    std::optional<double> slope;
    if (p.has_loads()) slope = wealth_rate_slope(p, clip);
    const double intercept = -(p.rho - p.theta) * p.scenario.c;

    std::vector<SweepRow> rows(grid.size());
    auto compute_row = [&](std::size_t i) {
        SweepRow& row = rows[i];
        row.axis_value = grid[i];
        try {
            RetentionProblem q = p;
            double x_pin = p.fixed_x.value_or(1.0);
            switch (axis) {
            case SweepAxis::u:
                if (!(grid[i] >= 0.0)) throw validation_error("u must be nonnegative");
                q.scenario.u = grid[i];
                break;
            case SweepAxis::k_cap:
                if (!(grid[i] >= 1.0)) throw validation_error("k_cap must be >= 1");
                q.scenario.k_cap = static_cast<int>(std::lround(grid[i]));
                break;
            case SweepAxis::x:
                if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
                    throw validation_error("x must lie in [0,1]");
                x_pin = grid[i];
                break;
            }
            if (solve_retention) {
                const auto res = optimal_retention(q, clip);
                const auto rep = umr_perturbed(q.scenario, detail::terms_at(q, res.x_star),
                                               q.perturbation, clip);
                row.umr = res.umr_at_x;
                row.x_star = res.x_star;
                row.objective = res.objective;
                row.converged_in_k = rep.converged_in_k;
            } else {
                const auto rep =
                    umr_perturbed(q.scenario, detail::terms_at(q, x_pin), q.perturbation, clip);
                row.umr = rep.alpha;
                if (slope) row.objective = *slope * x_pin + intercept;
                row.converged_in_k = rep.converged_in_k;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    if (jobs <= 1 || grid.size() == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) compute_row(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                compute_row(i);
        };
        std::vector<std::thread> pool;
        const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(grid.size()));
        pool.reserve(n);
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return rows;
}

} // namespace ruinlab
