#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qbargain/rwgame.hpp"

using namespace qbargain;
using doctest::Approx;

TEST_CASE("transaction probability") {
    CHECK(rw::transaction_probability(0.0) == 0.5);
    CHECK(rw::transaction_probability(0.85096) == Approx(oracle::kTailAt085096).epsilon(1e-13));
    CHECK(rw::transaction_probability(40.0) < 1e-300);
    for (double a = -5.0; a < 5.0; a += 0.1)
        CHECK(rw::transaction_probability(a + 0.1) < rw::transaction_probability(a));
}

TEST_CASE("expected waiting time") {
    CHECK(rw::expected_waiting_time(0.0, 1.0) == 3.0);
    CHECK(rw::expected_waiting_time(0.85096, 1.0) == Approx(1.0 + 1.0 / oracle::kTailAt085096).epsilon(1e-13));
    CHECK(rw::expected_waiting_time(0.0, 2.0) == 6.0);
    for (double a = -5.0; a < 5.0; a += 0.1)
        CHECK(rw::expected_waiting_time(a + 0.1, 1.0) > rw::expected_waiting_time(a, 1.0));
    CHECK(rw::expected_waiting_time(-30.0, 1.5) >= 2.0 * 1.5);
    CHECK_THROWS_AS(rw::expected_waiting_time(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("profit intensity closed form") {
    CHECK(rw::profit_intensity(0.85096, 1.0) == Approx(0.14028).epsilon(5e-5 / 0.14028));
    CHECK(rw::profit_intensity(0.0, 1.0) == 0.0);
    CHECK(rw::profit_intensity(0.0, 0.0) == Approx(oracle::eta(0.0) / 1.5).epsilon(1e-14));
}

TEST_CASE("profit intensity agrees with quadrature of the integral form") {
    for (double p10 : {0.0, 0.25, 0.5, 0.75, 1.0})
        for (double a = -5.0; a <= 5.0; a += 0.5)
            CHECK(std::abs(rw::profit_intensity(a, p10) - oracle::rho_by_quadrature(a, p10)) < 1e-8);
}

TEST_CASE("profit intensity is affine in p10") {
    oracle::Random rng(31);
    for (int k = 0; k < 200; ++k) {
        const double a = rng.uniform(-5, 5), p = rng.uniform(0, 1);
        const double lhs = rw::profit_intensity(a, p);
        const double rhs = p * rw::profit_intensity(a, 1.0) + (1.0 - p) * rw::profit_intensity(a, 0.0);
        CHECK(std::abs(lhs - rhs) < 1e-15 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("maximize_profit") {
    const auto one = rw::maximize_profit(1.0);
    CHECK(std::abs(one.a_star - oracle::kArgmaxP10One) <= 1e-8);
    CHECK(std::abs(one.rho_star - oracle::kRhoMaxP10One) <= 1e-12);
    CHECK(std::abs(one.a_star - 0.85096) < 5e-5);
    CHECK(std::abs(one.rho_star - 0.14028) < 5e-5);

    const auto zero = rw::maximize_profit(0.0);
    CHECK(std::abs(zero.a_star - oracle::kFixedPointP10Zero) <= 1e-8);
    // The maximizer is a fixed point of rho.
    CHECK(std::abs(zero.rho_star - zero.a_star) < 1e-8);

    // Brute-force scan never beats the optimizer.
    for (double p10 : {0.1, 0.5, 0.9}) {
        const auto opt = rw::maximize_profit(p10);
        for (double a = -10.0; a <= 10.0; a += 0.001) CHECK(rw::profit_intensity(a, p10) <= opt.rho_star + 1e-15);
    }
    CHECK_THROWS_AS(rw::maximize_profit(1.5), std::invalid_argument);
}

TEST_CASE("fixed point iteration") {
    const auto fp = rw::fixed_point(0.0, 1e-10);
    const double bis = oracle::bisect(
        [](double a) { return a - oracle::eta(a) / (1.0 + oracle::phi(-a)); }, -1.0, 2.0);
    CHECK(std::abs(bis - oracle::kFixedPointP10Zero) < 1e-14);
    CHECK(std::abs(fp.a_fix - bis) < 1e-9);
    CHECK(fp.iterations < 100);
    CHECK(std::abs(fp.a_fix - rw::maximize_profit(0.0).a_star) < 1e-7);

    // p10 = 1: a - rho(a, 1) = a / (1 + Phi(-a)) vanishes only at 0.
    const auto fp1 = rw::fixed_point(1.0, 1e-12);
    const double bis1 = oracle::bisect([](double a) { return a - a * oracle::phi(-a) / (1.0 + oracle::phi(-a)); },
                                       -1.0, 1.3);
    CHECK(std::abs(fp1.a_fix - bis1) < 1e-12);

    // Any start in [-2, 2] lands on the same point.
    for (double a0 = -2.0; a0 <= 2.0; a0 += 0.5)
        CHECK(std::abs(rw::fixed_point(0.0, 1e-12, a0).a_fix - oracle::kFixedPointP10Zero) < 1e-11);

    CHECK_THROWS_AS(rw::fixed_point(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("stationarity certificate at p10 = 1") {
    const double a = rw::maximize_profit(1.0).a_star;
    const double tail = oracle::phi(-a);
    CHECK(std::abs(tail * (1.0 + tail) - a * oracle::eta(a)) < 1e-6);
}

TEST_CASE("profit surface") {
    rw::SurfaceSpec spec;
    const auto cells = rw::profit_surface(spec);
    REQUIRE(cells.size() == 101 * 51);
    for (const auto& c : cells) {
        if (c.p01 == 1.0) CHECK(c.rho > 0.0);
        if (c.p01 == 0.0 && c.a < 0.0) CHECK(c.rho < 0.0);
    }
    // Row-major in (a, p01).
    CHECK(cells[0].a == -2.5);
    CHECK(cells[0].p01 == 0.0);
    CHECK(cells[1].p01 == Approx(0.02));
    CHECK(cells[51].a == Approx(-2.45));

    // Cell nearest the headline optimum.
    const rw::SurfaceSpec single{0.85096, 1.0, 2, 2};
    CHECK(rw::profit_surface(single)[0].rho == Approx(0.14028).epsilon(5e-5 / 0.14028));

    // OpenMP kernel equals the serial reference exactly.
    const rw::SurfaceSpec odd{-3.0, 4.0, 37, 13};
    const auto par = rw::profit_surface(odd);
    const auto ser = rw::profit_surface_serial(odd);
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < par.size(); ++k) {
        CHECK(par[k].a == ser[k].a);
        CHECK(par[k].p01 == ser[k].p01);
        CHECK(par[k].rho == ser[k].rho);
    }

    CHECK_THROWS_AS(rw::profit_surface({0.0, 1.0, 1, 5}), std::invalid_argument);
    CHECK_THROWS_AS(rw::profit_surface({1.0, 0.0, 5, 5}), std::invalid_argument);
}

TEST_CASE("expected log prices per polarization") {
    CHECK(rw::expected_log_price_10(0.85096) == -0.85096);
    CHECK(rw::expected_log_price_01(0.0) == Approx(-0.79788456080286536).epsilon(1e-14));
    CHECK(rw::expected_log_price_01(0.85096) == Approx(oracle::kTruncMeanAt085096).epsilon(1e-13));
}
