#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbargain/pricing.hpp"
#include "qbargain/rwgame.hpp"

namespace qbargain::mc {

struct SimConfig {
    PricingPair pair;
    double p10 = 1.0;
    std::uint64_t rounds = 1;
    std::uint64_t seed = 0;
    double theta = 1.0;

    void validate() const;
};

// Rounds are drawn in fixed-size chunks; chunk c uses its own engine seeded
// from (seed, c), so results do not depend on how chunks are scheduled.
inline constexpr std::uint64_t kChunkRounds = 1u << 16;

struct StandardErrors {
    double acceptance_freq = 0.0;
    double mean_waiting_rounds = 0.0;
    double var_waiting_rounds = 0.0;
    double empirical_expected_tau = 0.0;
    double mean_log_price_10 = 0.0;
    double mean_log_price_01 = 0.0;
    double empirical_rho = 0.0;
    double share_10 = 0.0;
};

struct SimReport {
    SimConfig config;
    std::uint64_t deals = 0;  // accepted rounds; each closes one deal
    std::uint64_t deals_10 = 0;
    std::uint64_t deals_01 = 0;
    // False when no round was accepted; every statistic below is then NaN.
    bool defined = false;

    double acceptance_freq = 0.0;
    double mean_waiting_rounds = 0.0;
    double var_waiting_rounds = 0.0;
    double empirical_expected_tau = 0.0;
    double mean_log_price_10 = 0.0;
    double mean_log_price_01 = 0.0;
    double empirical_rho = 0.0;
    double share_10 = 0.0;
    StandardErrors standard_errors;
};

/// OpenMP over chunks; workers <= 0 uses the runtime default. Bit-identical
/// for any worker count.
SimReport run_simulation(const SimConfig& cfg, int workers = 0);

/// Round-by-round reference without chunk bookkeeping. Same random streams,
/// so counts match run_simulation exactly and sums agree to rounding.
SimReport run_simulation_serial(const SimConfig& cfg);

struct Deviation {
    std::string statistic;
    double empirical;
    double analytic;
    double std_error;
    double z;
};

/// z-scores against the closed forms of the Rest-of-the-World game. The report
/// must come from Alice Dirac x Bob standard normal with the same p10 and
/// theta as params; params.a may differ from the simulated location.
std::vector<Deviation> compare_with_analytic(const SimReport& report, const rw::GameParams& params);

}  // namespace qbargain::mc
