#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "ruinlab/renewal.hpp"

using namespace ruinlab;

namespace {

RenewalSpec example1_spec(int k_cap = 100) {
    return {dist::Linear{1.0, 3.0}, dist::Lognormal{2.0, 1.0}, k_cap};
}

} // namespace

TEST_CASE("renewal count distribution") {
    const auto spec = example1_spec();
    CHECK(renewal_count_cdf(spec, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(renewal_count_cdf(spec, 2.0, 1.7) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(renewal_count_cdf(spec, 5.0, 3.0) == renewal_count_cdf(spec, 5.0, 3.9));
    CHECK(renewal_count_cdf(spec, 2.0, -0.3) == 0.0);
    // No claim fits before the minimal interarrival.
    CHECK(renewal_count_cdf(spec, 0.7, 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // Valid distribution in x: in [0,1], nondecreasing, saturating.
    double prev = 0.0;
    for (double x = 0.0; x <= 40.0; x += 0.25) {
        const double v = renewal_count_cdf(spec, 6.0, x);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK(renewal_count_cdf(spec, 6.0, 1000.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(renewal_count_cdf(spec, 0.0, 1.0), validation_error);
}

TEST_CASE("renewal reward distribution") {
    const RenewalSpec spec{dist::Linear{1.0, 3.0}, dist::Linear{4.0, 6.0}, 100};
    // t below the minimal interarrival: the empty sum already covers x.
    CHECK(renewal_reward_cdf(spec, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(renewal_reward_cdf(spec, 4.0, 0.0) == 0.0);
    double prev = 0.0;
    for (double x = 0.0; x <= 60.0; x += 0.5) {
        const double v = renewal_reward_cdf(spec, 4.0, x);
        CHECK(v >= prev);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        prev = v;
    }
    CHECK_THROWS_AS(renewal_reward_cdf(spec, 4.0, -1.0), validation_error);
}

TEST_CASE("long-run renewal rate") {
    const auto spec = example1_spec();
    CHECK(long_run_renewal_rate(spec) == doctest::Approx(std::log(3.0) / 2.0).epsilon(1e-8));

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> unif(0.05, 10.0);
    for (int i = 0; i < 100; ++i) {
        double a = unif(rng), b = unif(rng);
        if (a > b) std::swap(a, b);
        if (b - a < 1e-3) b = a + 1e-3;
        const RenewalSpec s{dist::Linear{a, b}, dist::Linear{4.0, 6.0}, 10};
        CHECK(long_run_renewal_rate(s) ==
              doctest::Approx(std::log(b / a) / (b - a)).epsilon(1e-8));
    }

    // Near-constant interarrival m: the rate approaches 1/m.
    const RenewalSpec constant{
        dist::PiecewiseQuantile{{0.01, 0.5, 0.99}, {2.0, 2.0 + 1e-10, 2.0 + 2e-10}},
        dist::Linear{4.0, 6.0}, 10};
    CHECK(long_run_renewal_rate(constant) == doctest::Approx(0.5).epsilon(1e-8));

    const RenewalSpec touching{dist::Linear{0.0, 1.0}, dist::Linear{4.0, 6.0}, 10};
    CHECK_THROWS_AS(long_run_renewal_rate(touching), numerical_error);
}

TEST_CASE("reward rate quantiles") {
    const auto spec = example1_spec();
    CHECK(reward_rate_inverse(spec, 0.5) ==
          doctest::Approx(std::exp(2.0) / 2.0).epsilon(1e-12));

    // Supremum at the upper endpoint for bounded severity.
    const RenewalSpec bounded{dist::Linear{1.0, 3.0}, dist::Linear{4.0, 6.0}, 10};
    CHECK(reward_rate_inverse(bounded, 1.0 - 1e-10) == doctest::Approx(6.0).epsilon(1e-6));

    // Integrating the rate quantile recovers the ratio integral.
    AlphaClip clip;
    const double integral = integrate_rel(
        [&](double a) { return reward_rate_inverse(bounded, a); }, clip.delta,
        1.0 - clip.delta, 1e-10);
    const double ratio = expected_ratio(bounded.severity, bounded.interarrival);
    CHECK(std::fabs(integral - ratio) <= 1e-8);

    CHECK_THROWS_AS(reward_rate_inverse(spec, 0.0), validation_error);
    CHECK_THROWS_AS(reward_rate_inverse(spec, 1.0), validation_error);
}

TEST_CASE("Liu increment quantiles") {
    CHECK(liu_increment_inverse({1.0}, 0.5) == 0.0);
    const double v1 = liu_increment_inverse({1.0}, 0.73);
    CHECK(liu_increment_inverse({2.0}, 0.73) == doctest::Approx(2.0 * v1).epsilon(1e-12));
    CHECK(liu_increment_inverse({1.0}, 0.9) ==
          doctest::Approx(std::numbers::sqrt3 / std::numbers::pi * std::log(9.0))
              .epsilon(1e-12));
    // Exact odd symmetry around the median.
    for (double a : {0.001, 0.2, 0.37, 0.49, 0.5, 0.77, 0.999})
        CHECK(liu_increment_inverse({1.7}, a) + liu_increment_inverse({1.7}, 1.0 - a) == 0.0);
    CHECK_THROWS_AS(liu_increment_inverse({1.0}, 0.0), validation_error);
    CHECK_THROWS_AS(liu_increment_inverse({0.0}, 0.5), validation_error);
}
