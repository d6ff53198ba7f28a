#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracles.hpp"
#include "qbargain/mcsim.hpp"

using namespace qbargain;
using namespace qbargain::mc;

namespace {

SimConfig dirac_gauss(double a, double p10, std::uint64_t rounds, std::uint64_t seed, double theta = 1.0) {
    SimConfig cfg;
    cfg.pair = {Dirac{a}, Gaussian{0.0, 1.0}};
    cfg.p10 = p10;
    cfg.rounds = rounds;
    cfg.seed = seed;
    cfg.theta = theta;
    return cfg;
}

bool same_bits(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }

void check_identical(const SimReport& x, const SimReport& y) {
    CHECK(x.deals == y.deals);
    CHECK(x.deals_10 == y.deals_10);
    CHECK(same_bits(x.acceptance_freq, y.acceptance_freq));
    CHECK(same_bits(x.mean_waiting_rounds, y.mean_waiting_rounds));
    CHECK(same_bits(x.var_waiting_rounds, y.var_waiting_rounds));
    CHECK(same_bits(x.mean_log_price_01, y.mean_log_price_01));
    CHECK(same_bits(x.empirical_rho, y.empirical_rho));
    CHECK(same_bits(x.standard_errors.empirical_rho, y.standard_errors.empirical_rho));
}

}  // namespace

TEST_CASE("config validation") {
    auto cfg = dirac_gauss(0.0, 0.5, 10, 1);
    cfg.rounds = 0;
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg = dirac_gauss(0.0, 1.5, 10, 1);
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
    cfg = dirac_gauss(0.0, 0.5, 10, 1, 0.0);
    CHECK_THROWS_AS(run_simulation(cfg), std::invalid_argument);
}

TEST_CASE("acceptance frequency and geometric waiting times") {
    const auto rep = run_simulation(dirac_gauss(0.0, 0.5, 1'000'000, 7));
    CHECK(std::abs(rep.acceptance_freq - 0.5) < 3.0 * std::sqrt(0.25 / 1e6));
    CHECK(std::abs(rep.mean_waiting_rounds - 2.0) < 4.0 * rep.standard_errors.mean_waiting_rounds);
    // Geometric variance (1 - P)/P^2 = 2.
    CHECK(std::abs(rep.var_waiting_rounds - 2.0) < 4.0 * rep.standard_errors.var_waiting_rounds);
    CHECK(rep.deals_10 + rep.deals_01 == rep.deals);
    CHECK(std::abs(rep.share_10 - 0.5) < 4.0 * rep.standard_errors.share_10);
}

TEST_CASE("acceptance frequency tracks Phi(-a)") {
    for (double a : {-1.0, 0.0, 0.85096, 2.0}) {
        const auto rep = run_simulation(dirac_gauss(a, 0.3, 1'000'000, 99));
        const double p = oracle::phi(-a);
        const double se = std::sqrt(p * (1 - p) / 1e6);
        CHECK(std::abs(rep.acceptance_freq - p) < 4.0 * se);
        const double geo_var = (1 - p) / (p * p);
        CHECK(std::abs(rep.mean_waiting_rounds - 1.0 / p) < 4.0 * rep.standard_errors.mean_waiting_rounds);
        CHECK(std::abs(rep.var_waiting_rounds - geo_var) < 4.0 * rep.standard_errors.var_waiting_rounds);
        CHECK(std::abs(rep.share_10 - 0.3) < 4.0 * rep.standard_errors.share_10);
    }
}

TEST_CASE("empirical profit intensity at the headline optimum") {
    const auto rep = run_simulation(dirac_gauss(0.85096, 1.0, 1'000'000, 2024));
    CHECK(rep.deals_01 == 0);
    CHECK(std::abs(rep.empirical_rho - 0.14028) < 3.0 * rep.standard_errors.empirical_rho);
    // Alice proposes every deal: price is exactly exp(-a).
    CHECK(rep.standard_errors.mean_log_price_10 == 0.0);
}

TEST_CASE("theta rescales time but not rounds") {
    const auto r1 = run_simulation(dirac_gauss(0.3, 0.5, 200'000, 5, 1.0));
    const auto r2 = run_simulation(dirac_gauss(0.3, 0.5, 200'000, 5, 2.5));
    CHECK(r1.deals == r2.deals);
    CHECK(r2.empirical_expected_tau == doctest::Approx(2.5 * r1.empirical_expected_tau).epsilon(1e-12));
    CHECK(r2.empirical_rho == doctest::Approx(r1.empirical_rho / 2.5).epsilon(1e-12));
}

TEST_CASE("results do not depend on worker count") {
    const auto cfg = dirac_gauss(0.5, 0.4, 700'001, 11);
    const auto one = run_simulation(cfg, 1);
    check_identical(one, run_simulation(cfg, 3));
    check_identical(one, run_simulation(cfg, 8));
    check_identical(one, run_simulation(cfg, 1));
}

TEST_CASE("parallel kernel matches the serial reference") {
    for (auto cfg : {dirac_gauss(0.5, 0.4, 300'000, 3), dirac_gauss(4.0, 0.5, 200'000, 4)}) {
        const auto par = run_simulation(cfg, 4);
        const auto ser = run_simulation_serial(cfg);
        CHECK(par.deals == ser.deals);
        CHECK(par.deals_10 == ser.deals_10);
        CHECK(par.mean_waiting_rounds == doctest::Approx(ser.mean_waiting_rounds).epsilon(1e-12));
        CHECK(par.var_waiting_rounds == doctest::Approx(ser.var_waiting_rounds).epsilon(1e-10));
        CHECK(par.empirical_rho == doctest::Approx(ser.empirical_rho).epsilon(1e-12));
        CHECK(par.mean_log_price_01 == doctest::Approx(ser.mean_log_price_01).epsilon(1e-12));
    }
}

TEST_CASE("different seeds give different streams") {
    const auto a = run_simulation(dirac_gauss(0.0, 0.5, 100'000, 1));
    const auto b = run_simulation(dirac_gauss(0.0, 0.5, 100'000, 2));
    CHECK(a.deals != b.deals);
}

TEST_CASE("no acceptance leaves statistics undefined") {
    SimConfig cfg;
    cfg.pair = {Dirac{1.0}, Dirac{0.5}};
    cfg.rounds = 1000;
    const auto rep = run_simulation(cfg);
    CHECK_FALSE(rep.defined);
    CHECK(rep.deals == 0);
    CHECK(rep.acceptance_freq == 0.0);
    CHECK(std::isnan(rep.empirical_rho));
}

TEST_CASE("Gaussian and grid laws can be simulated") {
    SimConfig cfg;
    cfg.pair = {Gaussian{0.2, 0.7}, to_grid(Gaussian{0.0, 1.0})};
    cfg.rounds = 400'000;
    cfg.seed = 17;
    cfg.p10 = 0.5;
    const auto rep = run_simulation(cfg);
    const double p = acceptance_probability(cfg.pair);
    CHECK(std::abs(rep.acceptance_freq - p) < 4.0 * rep.standard_errors.acceptance_freq);

    const double e10 = expected_log_price(normalize(price_log_density(cfg.pair, Polarization::P10)));
    const double e01 = expected_log_price(normalize(price_log_density(cfg.pair, Polarization::P01)));
    CHECK(std::abs(rep.mean_log_price_10 - e10) < 4.0 * rep.standard_errors.mean_log_price_10);
    CHECK(std::abs(rep.mean_log_price_01 - e01) < 4.0 * rep.standard_errors.mean_log_price_01);
}

TEST_CASE("compare_with_analytic") {
    const auto rep = run_simulation(dirac_gauss(0.85096, 0.5, 1'000'000, 8));
    const auto table = compare_with_analytic(rep, {0.85096, 0.5, 1.0});
    CHECK(table.size() == 8);
    for (const auto& row : table) {
        INFO(row.statistic);
        CHECK(std::abs(row.z) < 4.0);
    }

    const auto off = compare_with_analytic(rep, {0.6, 0.5, 1.0});
    CHECK(off[0].statistic == "acceptance_freq");
    CHECK(std::abs(off[0].z) > 20.0);

    CHECK_THROWS_AS(compare_with_analytic(rep, {0.85096, 0.4, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(compare_with_analytic(rep, {0.85096, 0.5, 2.0}), std::invalid_argument);

    SimReport empty;
    empty.config.rounds = 0;
    CHECK_THROWS_AS(compare_with_analytic(empty, {0.0, 1.0, 1.0}), std::invalid_argument);

    SimConfig gg;
    gg.pair = {Gaussian{0.0, 1.0}, Gaussian{0.0, 1.0}};
    gg.rounds = 1000;
    CHECK_THROWS_AS(compare_with_analytic(run_simulation(gg), {0.0, 1.0, 1.0}), std::invalid_argument);
}
