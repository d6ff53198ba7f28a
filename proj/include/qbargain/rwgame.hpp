#pragma once

#include <cstddef>
#include <vector>

// Alice (delta strategy at q = a) bargaining with the Rest of the World,
// whose log-price intention is standard normal after rescaling by its
// dispersion. Times are in units of the round duration theta.

namespace qbargain::rw {

struct GameParams {
    double a = 0.0;      // withdrawal price is exp(-a)
    double p10 = 1.0;    // probability that Alice proposes
    double theta = 1.0;  // mean duration of one bargaining round

    void validate() const;
};

struct ProfitResult {
    double rho;
    double transaction_prob;
    double expected_tau;
};

/// Phi(-a).
double transaction_probability(double a);

/// (1 + 1/Phi(-a)) theta.
double expected_waiting_time(double a, double theta);

/// E(ln c) when Alice proposes: the point mass at -a.
inline double expected_log_price_10(double a) { return -a; }

/// E(ln c) when the Rest of the World proposes: the normal law truncated to
/// ln c <= -a, mean -eta(a)/Phi(-a).
double expected_log_price_01(double a);

/// [p10 a Phi(-a) + (1 - p10) eta(a)] / (1 + Phi(-a)), in units of 1/theta.
double profit_intensity(double a, double p10);

ProfitResult evaluate(const GameParams& params);

struct Optimum {
    double a_star;
    double rho_star;
};

inline constexpr double kSearchLo = -10.0;
inline constexpr double kSearchHi = 10.0;

/// Global maximizer of profit_intensity(., p10) on [-10, 10], to |da| <= 1e-8.
Optimum maximize_profit(double p10);

struct FixedPoint {
    double a_fix;
    int iterations;
};

inline constexpr int kFixedPointCap = 10000;

/// Iterates a <- profit_intensity(a, p10) from a0 until successive iterates
/// differ by less than tol. Throws std::runtime_error past kFixedPointCap.
FixedPoint fixed_point(double p10, double tol, double a0 = 0.0);

struct SurfaceCell {
    double a;
    double p01;
    double rho;
};

struct SurfaceSpec {
    double a_min = -2.5;
    double a_max = 2.5;
    std::size_t a_steps = 101;
    std::size_t p01_steps = 51;

    void validate() const;
    double a_at(std::size_t i) const;
    double p01_at(std::size_t j) const;
};

/// Row-major in (a, p01): cell index = i * p01_steps + j. OpenMP-parallel.
std::vector<SurfaceCell> profit_surface(const SurfaceSpec& spec);

/// Single-threaded reference for profit_surface.
std::vector<SurfaceCell> profit_surface_serial(const SurfaceSpec& spec);

}  // namespace qbargain::rw
