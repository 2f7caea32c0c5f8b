#pragma once

#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "ruinlab/retention.hpp"

namespace ruinlab {

// Scenario file contents. Loads/epsilon are optional so UMR-only runs can
// omit them; the retention subcommand insists on them.
struct ScenarioConfig {
    RiskScenario scenario;
    std::optional<double> rho;
    std::optional<double> theta;
    std::optional<double> epsilon;
    PerturbationSpec perturbation;
    std::optional<double> retention_x;
};

namespace detail {

inline double require_number(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number())
        throw validation_error(path + ": expected a number");
    return j.get<double>();
}

inline void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known,
                           const std::string& path) {
    for (const auto& [key, _] : j.items())
        if (!known.contains(key))
            throw validation_error(path.empty() ? "unknown key \"" + key + "\""
                                                : path + ": unknown key \"" + key + "\"");
}

} // namespace detail

// Distribution literal: {"kind":"linear","a":1,"b":3} and friends.
inline RegularDistribution parse_distribution(const nlohmann::json& j,
                                              const std::string& path) {
    if (!j.is_object() || !j.contains("kind"))
        throw validation_error(path + ": expected an object with a \"kind\" key");
    const std::string kind = j.at("kind").get<std::string>();
    RegularDistribution d;
    try {
        if (kind == "linear") {
            detail::reject_unknown(j, {"kind", "a", "b"}, path);
            const double a = detail::require_number(j.at("a"), path + ".a");
            const double b = detail::require_number(j.at("b"), path + ".b");
            if (!(a < b)) throw validation_error(path + ".b: must be strictly greater than a");
            d = dist::Linear{a, b};
        } else if (kind == "normal" || kind == "lognormal") {
            detail::reject_unknown(j, {"kind", "e", "sigma"}, path);
            const double e = detail::require_number(j.at("e"), path + ".e");
            const double sigma = detail::require_number(j.at("sigma"), path + ".sigma");
            if (kind == "normal")
                d = dist::Normal{e, sigma};
            else
                d = dist::Lognormal{e, sigma};
        } else if (kind == "quantiles") {
            detail::reject_unknown(j, {"kind", "alpha", "q"}, path);
            dist::PiecewiseQuantile pq;
            pq.alpha = j.at("alpha").get<std::vector<double>>();
            pq.q = j.at("q").get<std::vector<double>>();
            d = std::move(pq);
        } else {
            throw validation_error(path + ".kind: unknown distribution kind \"" + kind + "\"");
        }
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(path + ": " + e.what());
    }
    try {
        validate(d);
    } catch (const validation_error& e) {
        throw validation_error(path + ": " + e.what());
    }
    return d;
}

inline nlohmann::json to_json(const RegularDistribution& d) {
    return std::visit(
        [](const auto& v) -> nlohmann::json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, dist::Linear>)
                return {{"kind", "linear"}, {"a", v.a}, {"b", v.b}};
            else if constexpr (std::is_same_v<T, dist::Normal>)
                return {{"kind", "normal"}, {"e", v.e}, {"sigma", v.sigma}};
            else if constexpr (std::is_same_v<T, dist::Lognormal>)
                return {{"kind", "lognormal"}, {"e", v.e}, {"sigma", v.sigma}};
            else
                return {{"kind", "quantiles"}, {"alpha", v.alpha}, {"q", v.q}};
        },
        d);
}

inline ScenarioConfig parse_scenario_config(const nlohmann::json& j, AlphaClip clip = {}) {
    if (!j.is_object()) throw validation_error("config root must be a JSON object");
    detail::reject_unknown(j,
                           {"u", "c", "rho", "theta", "epsilon", "k_cap", "interarrival",
                            "severity", "perturbation", "retention_x"},
                           "");
    ScenarioConfig cfg;
    try {
        cfg.scenario.u = detail::require_number(j.at("u"), "u");
        cfg.scenario.c = detail::require_number(j.at("c"), "c");
        if (!j.contains("interarrival")) throw validation_error("interarrival: missing");
        if (!j.contains("severity")) throw validation_error("severity: missing");
        cfg.scenario.interarrival = parse_distribution(j.at("interarrival"), "interarrival");
        cfg.scenario.severity = parse_distribution(j.at("severity"), "severity");
        if (j.contains("k_cap")) {
            const double k = detail::require_number(j.at("k_cap"), "k_cap");
            if (k < 1.0 || k != std::floor(k))
                throw validation_error("k_cap: must be a positive integer");
            cfg.scenario.k_cap = static_cast<int>(k);
        }
        if (j.contains("rho")) cfg.rho = detail::require_number(j.at("rho"), "rho");
        if (j.contains("theta")) cfg.theta = detail::require_number(j.at("theta"), "theta");
        if (j.contains("epsilon"))
            cfg.epsilon = detail::require_number(j.at("epsilon"), "epsilon");
        if (j.contains("retention_x")) {
            cfg.retention_x = detail::require_number(j.at("retention_x"), "retention_x");
            if (!(*cfg.retention_x >= 0.0 && *cfg.retention_x <= 1.0))
                throw validation_error("retention_x: must lie in [0,1]");
        }
        if (j.contains("perturbation")) {
            const auto& pj = j.at("perturbation");
            detail::reject_unknown(pj, {"enabled", "mode"}, "perturbation");
            if (!pj.contains("enabled") || !pj.at("enabled").is_boolean())
                throw validation_error("perturbation.enabled: expected a boolean");
            cfg.perturbation.enabled = pj.at("enabled").get<bool>();
            if (pj.contains("mode")) {
                const std::string mode = pj.at("mode").get<std::string>();
                if (mode == "as_printed")
                    cfg.perturbation.mode = PerturbationMode::as_printed;
                else if (mode == "per_claim")
                    cfg.perturbation.mode = PerturbationMode::per_claim;
                else
                    throw validation_error("perturbation.mode: expected \"as_printed\" or "
                                           "\"per_claim\"");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("config: ") + e.what());
    }
    try {
        validate(cfg.scenario, clip);
    } catch (const validation_error& e) {
        // Re-point the message at the offending fields where we can.
        throw validation_error(std::string("scenario: ") + e.what());
    }
    if (cfg.rho || cfg.theta) {
        if (!cfg.rho || !cfg.theta)
            throw validation_error("rho/theta: both loads must be given together");
        if (!(*cfg.rho > *cfg.theta && *cfg.theta >= 0.0))
            throw validation_error("rho/theta: must satisfy rho > theta >= 0");
    }
    if (cfg.epsilon && !(*cfg.epsilon > 0.0 && *cfg.epsilon < 1.0))
        throw validation_error("epsilon: must lie in (0,1)");
    return cfg;
}

// Normalized round-trippable form (the --dump-config output).
inline nlohmann::json to_json(const ScenarioConfig& cfg) {
    nlohmann::json j;
    j["u"] = cfg.scenario.u;
    j["c"] = cfg.scenario.c;
    j["k_cap"] = cfg.scenario.k_cap;
    j["interarrival"] = to_json(cfg.scenario.interarrival);
    j["severity"] = to_json(cfg.scenario.severity);
    if (cfg.rho) j["rho"] = *cfg.rho;
    if (cfg.theta) j["theta"] = *cfg.theta;
    if (cfg.epsilon) j["epsilon"] = *cfg.epsilon;
    if (cfg.retention_x) j["retention_x"] = *cfg.retention_x;
    if (cfg.perturbation.enabled) {
        j["perturbation"] = {
            {"enabled", true},
            {"mode", cfg.perturbation.mode == PerturbationMode::as_printed ? "as_printed"
                                                                           : "per_claim"}};
    }
    return j;
}

} // namespace ruinlab
