#pragma once

#include <stdexcept>
#include <string>

namespace ruinlab {

// Bad inputs: invalid distribution parameters, out-of-range quantile
// arguments, malformed configs.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

// Computation failed: non-finite quantile at a clipped endpoint,
// divergent integral, infinite mean.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// The retention feasible set is empty for the requested ruin ceiling.
class no_feasible_retention : public std::runtime_error {
public:
    no_feasible_retention(const std::string& what, double min_grid_umr)
        : std::runtime_error(what), min_grid_umr_(min_grid_umr) {}

    // Smallest ruin measure seen on the retention grid.
    double min_grid_umr() const { return min_grid_umr_; }

private:
    double min_grid_umr_;
};

} // namespace ruinlab
