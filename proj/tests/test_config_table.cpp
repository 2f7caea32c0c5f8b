#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "ruinlab/config.hpp"
#include "ruinlab/table.hpp"

using namespace ruinlab;
using nlohmann::json;

namespace {

json example2_json() {
    return json::parse(R"({
        "u": 100000, "c": 26, "k_cap": 100,
        "rho": 0.9, "theta": 0.8, "epsilon": 0.005,
        "interarrival": {"kind": "linear", "a": 1, "b": 3},
        "severity": {"kind": "lognormal", "e": 2, "sigma": 1}
    })");
}

std::string error_of(const json& j) {
    try {
        (void)parse_scenario_config(j);
    } catch (const validation_error& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("scenario config parses the reference inputs") {
    const auto cfg = parse_scenario_config(example2_json());
    CHECK(cfg.scenario.u == 100000.0);
    CHECK(cfg.scenario.c == 26.0);
    CHECK(cfg.scenario.k_cap == 100);
    CHECK(std::holds_alternative<dist::Linear>(cfg.scenario.interarrival));
    CHECK(std::holds_alternative<dist::Lognormal>(cfg.scenario.severity));
    REQUIRE(cfg.rho.has_value());
    CHECK(*cfg.rho == 0.9);
    CHECK(*cfg.theta == 0.8);
    CHECK(*cfg.epsilon == 0.005);
    CHECK_FALSE(cfg.perturbation.enabled);
    CHECK_FALSE(cfg.retention_x.has_value());
}

TEST_CASE("config round-trips through its normalized dump") {
    auto j = example2_json();
    j["perturbation"] = {{"enabled", true}, {"mode", "per_claim"}};
    j["retention_x"] = 0.75;
    const auto cfg = parse_scenario_config(j);
    const auto dumped = to_json(cfg);
    const auto cfg2 = parse_scenario_config(dumped);
    CHECK(to_json(cfg2) == dumped);
    CHECK(cfg2.perturbation.enabled);
    CHECK(cfg2.perturbation.mode == PerturbationMode::per_claim);
    CHECK(*cfg2.retention_x == 0.75);
}

TEST_CASE("config errors carry field paths") {
    auto j = example2_json();
    j["interarrival"]["b"] = 0.5;
    CHECK(error_of(j).find("interarrival.b") != std::string::npos);

    j = example2_json();
    j["severity"]["kind"] = "cauchy";
    CHECK(error_of(j).find("severity.kind") != std::string::npos);

    j = example2_json();
    j["typo_key"] = 1;
    CHECK(error_of(j).find("typo_key") != std::string::npos);

    j = example2_json();
    j["interarrival"]["extra"] = 1;
    CHECK(error_of(j).find("interarrival") != std::string::npos);

    j = example2_json();
    j.erase("severity");
    CHECK(error_of(j).find("severity") != std::string::npos);

    j = example2_json();
    j["k_cap"] = 2.5;
    CHECK(error_of(j).find("k_cap") != std::string::npos);

    j = example2_json();
    j.erase("theta");
    CHECK(error_of(j).find("rho/theta") != std::string::npos);

    j = example2_json();
    j["rho"] = 0.7; // below theta
    CHECK(error_of(j).find("rho/theta") != std::string::npos);

    j = example2_json();
    j["epsilon"] = 1.5;
    CHECK(error_of(j).find("epsilon") != std::string::npos);

    j = example2_json();
    j["retention_x"] = -0.1;
    CHECK(error_of(j).find("retention_x") != std::string::npos);

    j = example2_json();
    j["u"] = "ten";
    CHECK(error_of(j).find("u") != std::string::npos);

    j = example2_json();
    j["perturbation"] = {{"enabled", true}, {"mode", "sideways"}};
    CHECK(error_of(j).find("perturbation.mode") != std::string::npos);

    CHECK(error_of(json::array()).find("object") != std::string::npos);
}

TEST_CASE("quantile-grid distributions parse and validate") {
    const auto d = parse_distribution(
        json::parse(R"({"kind":"quantiles","alpha":[0.1,0.5,0.9],"q":[1,2,4]})"), "severity");
    CHECK(std::holds_alternative<dist::PiecewiseQuantile>(d));
    CHECK(inverse_cdf(d, 0.5) == doctest::Approx(2.0).epsilon(1e-12));

    try {
        (void)parse_distribution(
            json::parse(R"({"kind":"quantiles","alpha":[0.5,0.1],"q":[1,2]})"), "severity");
        FAIL("expected validation_error");
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("severity") != std::string::npos);
    }
}

TEST_CASE("sweep csv is RFC 4180 with CRLF and 12 significant digits") {
    std::vector<SweepRow> rows(3);
    rows[0].axis_value = 0.0;
    rows[0].umr = 0.123456789012345;
    rows[0].x_star = 0.5;
    rows[0].objective = -2.6;
    rows[0].converged_in_k = true;
    rows[1].axis_value = 1000.0;
    rows[1].umr = 1e-9;
    rows[1].converged_in_k = false;
    rows[2].axis_value = 2000.0;
    rows[2].error = "bad, \"quoted\" message";

    std::ostringstream os;
    write_sweep_csv(os, SweepAxis::u, rows);
    const std::string text = os.str();

    CHECK(text.find("axis,value,umr,x_star,objective,converged_in_k,error\r\n") == 0);
    CHECK(text.find("u,0,0.123456789012,0.5,-2.6,true,\r\n") != std::string::npos);
    CHECK(text.find("u,1000,1e-09,,,false,\r\n") != std::string::npos);
    // Embedded commas and quotes get the doubled-quote treatment.
    CHECK(text.find("u,2000,,,,,\"bad, \"\"quoted\"\" message\"\r\n") != std::string::npos);
    // Every line ends in CRLF: no bare \n anywhere.
    for (std::size_t i = 0; i + 1 < text.size(); ++i)
        if (text[i + 1] == '\n') CHECK(text[i] == '\r');
    CHECK(text.back() == '\n');

    // Deterministic output.
    std::ostringstream os2;
    write_sweep_csv(os2, SweepAxis::u, rows);
    CHECK(os2.str() == text);
}

TEST_CASE("sweep svg is a well-formed polyline chart") {
    std::vector<SweepRow> rows(3);
    for (int i = 0; i < 3; ++i) {
        rows[i].axis_value = i * 100.0;
        rows[i].umr = 0.5 - 0.1 * i;
    }
    std::ostringstream os;
    write_sweep_svg(os, SweepAxis::u, rows, false);
    const std::string svg = os.str();
    CHECK(svg.find("<?xml version=\"1.0\"") == 0);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\"") !=
          std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find(">umr<") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

    // Rows without values are skipped; a single point degrades gracefully.
    std::vector<SweepRow> sparse(2);
    sparse[0].axis_value = 1.0;
    sparse[0].x_star = 0.4;
    sparse[1].axis_value = 2.0;
    sparse[1].error = "failed";
    std::ostringstream os2;
    write_sweep_svg(os2, SweepAxis::k_cap, sparse, true);
    CHECK(os2.str().find("<polyline") == std::string::npos);
    CHECK(os2.str().find("</svg>") != std::string::npos);
}
