#include <doctest.h>

#include <charconv>
#include <cmath>

#include "oracles.hpp"
#include "qbargain/serialize.hpp"

using namespace qbargain;

TEST_CASE("distribution specs parse") {
    auto d = io::parse_distribution(R"({"type":"dirac","a":0.85})");
    CHECK(std::get<Dirac>(d).location == 0.85);
    d = io::parse_distribution(R"({"type":"gaussian","mean":0,"sigma":1})");
    CHECK(std::get<Gaussian>(d).sigma == 1.0);
    d = io::parse_distribution(R"({"type":"grid","points":[0,1],"density":[1,1]})");
    CHECK(std::get<GridDensity>(d).points().size() == 2);
}

TEST_CASE("malformed specs report what went wrong") {
    try {
        io::parse_distribution(R"({"type":"dirac", "a":})");
        FAIL("expected a syntax error");
    } catch (const io::SpecError& e) {
        CHECK(e.position() == 21);
    }
    CHECK_THROWS_AS(io::parse_distribution(R"({"type":"cauchy"})"), io::SpecError);
    CHECK_THROWS_AS(io::parse_distribution(R"({"type":"gaussian","mean":0})"), io::SpecError);
    CHECK_THROWS_AS(io::parse_distribution(R"({"type":"gaussian","mean":0,"sigma":-1})"), io::SpecError);
    CHECK_THROWS_AS(io::parse_distribution(R"({"type":"grid","points":[0,1],"density":[1,3]})"), io::SpecError);
    CHECK_THROWS_AS(io::parse_distribution(R"([1,2])"), io::SpecError);
}

TEST_CASE("distribution JSON round trip") {
    oracle::Random rng(51);
    for (int k = 0; k < 50; ++k) {
        const LogPriceDistribution d = Gaussian{rng.gauss(), rng.uniform(0.1, 3)};
        const auto back = io::distribution_from_json(io::to_json(d));
        CHECK(std::get<Gaussian>(back).mean == std::get<Gaussian>(d).mean);
        CHECK(std::get<Gaussian>(back).sigma == std::get<Gaussian>(d).sigma);
    }
}

TEST_CASE("format_double is shortest round-trip") {
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(-2.5) == "-2.5");
    oracle::Random rng(52);
    for (int k = 0; k < 1000; ++k) {
        const double v = rng.gauss() * std::pow(10.0, rng.uniform(-20, 20));
        const auto s = io::format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(back == v);
    }
}

TEST_CASE("qubit state JSON") {
    const auto s = io::state_from_json(nlohmann::json::parse("[[1, 0], [0, -1]]"));
    CHECK(s.xi1() == Complex{0.0, -1.0});
    CHECK(io::state_from_json(io::to_json(s)).xi1() == s.xi1());
    CHECK_THROWS_AS(io::state_from_json(nlohmann::json::parse("[[0,0],[0,0]]")), io::SpecError);
    CHECK_THROWS_AS(io::state_from_json(nlohmann::json::parse("[1]")), io::SpecError);
}

TEST_CASE("report JSON uses the report field names") {
    mc::SimConfig cfg;
    cfg.pair = {Dirac{0.0}, Gaussian{}};
    cfg.rounds = 1000;
    cfg.seed = 3;
    const auto j = io::to_json(mc::run_simulation(cfg));
    for (const char* key : {"acceptance_freq", "mean_waiting_rounds", "empirical_expected_tau", "mean_log_price_10",
                            "mean_log_price_01", "empirical_rho", "standard_errors"})
        CHECK(j.contains(key));
    // No deal under |01> when p10 = 1: undefined mean is null.
    CHECK(j["mean_log_price_01"].is_null());
}
