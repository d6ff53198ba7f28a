#include "qbargain/mcsim.hpp"

#include <omp.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "qbargain/normal.hpp"

namespace qbargain::mc {

void SimConfig::validate() const {
    qbargain::validate(pair.alice);
    qbargain::validate(pair.bob);
    if (!(p10 >= 0.0 && p10 <= 1.0)) throw std::invalid_argument("p10 must lie in [0, 1]");
    if (rounds < 1) throw std::invalid_argument("rounds must be at least 1");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
}

namespace {

std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
    return std::mt19937_64{seq};
}

// Uniform on the open interval (0, 1) from the top 53 bits.
double open_unit(std::mt19937_64& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

struct Round {
    double q;
    double p;
    bool pol10;
};

// Every round consumes exactly three draws whatever the laws are.
Round draw_round(const SimConfig& cfg, std::mt19937_64& eng) {
    const double uq = open_unit(eng);
    const double up = open_unit(eng);
    const double upol = open_unit(eng);
    return {quantile(cfg.pair.alice, uq), quantile(cfg.pair.bob, up), upol < cfg.p10};
}

struct DealSums {
    std::uint64_t n = 0;
    double k1 = 0, k2 = 0, k3 = 0, k4 = 0;
    double x1 = 0, x2 = 0, y1 = 0, y2 = 0, xy = 0;  // x = -ln c, y = (1 + k) theta
    std::uint64_t n10 = 0, n01 = 0;
    // Log prices are summed relative to a shift near their mean so that a
    // constant price gives a variance of exactly zero.
    double shift10 = 0, shift01 = 0;
    double lp10 = 0, lp10_sq = 0, lp01 = 0, lp01_sq = 0;

    static DealSums for_config(const SimConfig& cfg) {
        DealSums d;
        d.shift10 = -mean(cfg.pair.alice);
        d.shift01 = mean(cfg.pair.bob);
        return d;
    }

    void add(std::uint64_t k, const Round& r, double theta) {
        const double kd = static_cast<double>(k);
        const double log_price = r.pol10 ? -r.q : r.p;
        const double x = -log_price;
        const double y = (1.0 + kd) * theta;
        ++n;
        k1 += kd;
        k2 += kd * kd;
        k3 += kd * kd * kd;
        k4 += kd * kd * kd * kd;
        x1 += x;
        x2 += x * x;
        y1 += y;
        y2 += y * y;
        xy += x * y;
        if (r.pol10) {
            ++n10;
            const double v = log_price - shift10;
            lp10 += v;
            lp10_sq += v * v;
        } else {
            ++n01;
            const double v = log_price - shift01;
            lp01 += v;
            lp01_sq += v * v;
        }
    }

    void merge(const DealSums& o) {
        n += o.n;
        k1 += o.k1;
        k2 += o.k2;
        k3 += o.k3;
        k4 += o.k4;
        x1 += o.x1;
        x2 += o.x2;
        y1 += o.y1;
        y2 += o.y2;
        xy += o.xy;
        n10 += o.n10;
        n01 += o.n01;
        lp10 += o.lp10;
        lp10_sq += o.lp10_sq;
        lp01 += o.lp01;
        lp01_sq += o.lp01_sq;
    }
};

// A chunk cannot know the waiting time of its first deal until the failures
// carried in from earlier chunks are known, so that deal is held back.
struct ChunkStats {
    std::uint64_t rounds = 0;
    std::uint64_t leading = 0;   // failures before the first success
    std::uint64_t trailing = 0;  // failures after the last success
    bool has_first = false;
    Round first{};
    DealSums rest;
};

ChunkStats run_chunk(const SimConfig& cfg, std::uint64_t chunk) {
    ChunkStats s;
    const std::uint64_t begin = chunk * kChunkRounds;
    s.rounds = std::min(kChunkRounds, cfg.rounds - begin);
    s.rest = DealSums::for_config(cfg);
    auto eng = chunk_engine(cfg.seed, chunk);
    std::uint64_t failures = 0;
    for (std::uint64_t i = 0; i < s.rounds; ++i) {
        const Round r = draw_round(cfg, eng);
        if (!accepts(r.q, r.p)) {
            ++failures;
            continue;
        }
        if (!s.has_first) {
            s.has_first = true;
            s.first = r;
            s.leading = failures;
        } else {
            s.rest.add(failures + 1, r, cfg.theta);
        }
        failures = 0;
    }
    s.trailing = s.has_first ? failures : 0;
    if (!s.has_first) s.leading = failures;
    return s;
}

double sample_var(double sum, double sum_sq, std::uint64_t n) {
    if (n < 2) return 0.0;
    const double nd = static_cast<double>(n);
    const double m = sum / nd;
    return std::max(0.0, (sum_sq - nd * m * m) / (nd - 1.0));
}

SimReport finish(const SimConfig& cfg, const DealSums& d) {
    SimReport rep;
    rep.config = cfg;
    rep.deals = d.n;
    rep.deals_10 = d.n10;
    rep.deals_01 = d.n01;
    rep.defined = d.n > 0;
    auto& se = rep.standard_errors;

    const double rounds = static_cast<double>(cfg.rounds);
    rep.acceptance_freq = static_cast<double>(d.n) / rounds;
    se.acceptance_freq = std::sqrt(rep.acceptance_freq * (1.0 - rep.acceptance_freq) / rounds);

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (!rep.defined) {
        rep.mean_waiting_rounds = rep.var_waiting_rounds = rep.empirical_expected_tau = nan;
        rep.mean_log_price_10 = rep.mean_log_price_01 = rep.empirical_rho = rep.share_10 = nan;
        se.mean_waiting_rounds = se.var_waiting_rounds = se.empirical_expected_tau = nan;
        se.mean_log_price_10 = se.mean_log_price_01 = se.empirical_rho = se.share_10 = nan;
        return rep;
    }

    const double n = static_cast<double>(d.n);
    const double kbar = d.k1 / n;
    rep.mean_waiting_rounds = kbar;
    rep.var_waiting_rounds = sample_var(d.k1, d.k2, d.n);
    se.mean_waiting_rounds = std::sqrt(rep.var_waiting_rounds / n);
    const double m4 = d.k4 / n - 4.0 * kbar * d.k3 / n + 6.0 * kbar * kbar * d.k2 / n - 3.0 * std::pow(kbar, 4);
    se.var_waiting_rounds = std::sqrt(std::max(0.0, m4 - rep.var_waiting_rounds * rep.var_waiting_rounds) / n);

    const double ybar = d.y1 / n;
    const double xbar = d.x1 / n;
    rep.empirical_expected_tau = ybar;
    const double var_y = sample_var(d.y1, d.y2, d.n);
    se.empirical_expected_tau = std::sqrt(var_y / n);

    rep.mean_log_price_10 = d.n10 ? d.shift10 + d.lp10 / static_cast<double>(d.n10) : nan;
    rep.mean_log_price_01 = d.n01 ? d.shift01 + d.lp01 / static_cast<double>(d.n01) : nan;
    se.mean_log_price_10 = d.n10 ? std::sqrt(sample_var(d.lp10, d.lp10_sq, d.n10) / static_cast<double>(d.n10)) : nan;
    se.mean_log_price_01 = d.n01 ? std::sqrt(sample_var(d.lp01, d.lp01_sq, d.n01) / static_cast<double>(d.n01)) : nan;

    // Ratio estimator -E(ln c)/E(tau) with a delta-method error.
    const double ratio = xbar / ybar;
    rep.empirical_rho = ratio;
    const double var_x = sample_var(d.x1, d.x2, d.n);
    const double cov = d.n > 1 ? (d.xy - n * xbar * ybar) / (n - 1.0) : 0.0;
    se.empirical_rho = std::sqrt(std::max(0.0, var_x - 2.0 * ratio * cov + ratio * ratio * var_y) / n) / ybar;

    rep.share_10 = static_cast<double>(d.n10) / n;
    se.share_10 = std::sqrt(rep.share_10 * (1.0 - rep.share_10) / n);
    return rep;
}

}  // namespace

SimReport run_simulation(const SimConfig& cfg, int workers) {
    cfg.validate();
    const std::uint64_t chunks = (cfg.rounds + kChunkRounds - 1) / kChunkRounds;
    std::vector<ChunkStats> stats(chunks);
    const int threads = workers > 0 ? workers : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c)
        stats[static_cast<std::size_t>(c)] = run_chunk(cfg, static_cast<std::uint64_t>(c));

    // Ordered reduction.
    auto total = DealSums::for_config(cfg);
    std::uint64_t carry = 0;
    for (const auto& s : stats) {
        if (!s.has_first) {
            carry += s.leading;
            continue;
        }
        total.add(carry + s.leading + 1, s.first, cfg.theta);
        total.merge(s.rest);
        carry = s.trailing;
    }
    return finish(cfg, total);
}

SimReport run_simulation_serial(const SimConfig& cfg) {
    cfg.validate();
    auto total = DealSums::for_config(cfg);
    std::mt19937_64 eng;
    std::uint64_t failures = 0;
    for (std::uint64_t r = 0; r < cfg.rounds; ++r) {
        if (r % kChunkRounds == 0) eng = chunk_engine(cfg.seed, r / kChunkRounds);
        const Round round = draw_round(cfg, eng);
        if (accepts(round.q, round.p)) {
            total.add(failures + 1, round, cfg.theta);
            failures = 0;
        } else {
            ++failures;
        }
    }
    return finish(cfg, total);
}

std::vector<Deviation> compare_with_analytic(const SimReport& report, const rw::GameParams& params) {
    params.validate();
    const auto& cfg = report.config;
    if (cfg.rounds == 0 || !report.defined) throw std::invalid_argument("report has no completed deals");
    const auto* alice = std::get_if<Dirac>(&cfg.pair.alice);
    const auto* bob = std::get_if<Gaussian>(&cfg.pair.bob);
    if (!alice || !bob || bob->mean != 0.0 || bob->sigma != 1.0)
        throw std::invalid_argument("config mismatch: comparison needs Alice Dirac x Bob standard normal");
    if (cfg.p10 != params.p10 || cfg.theta != params.theta)
        throw std::invalid_argument("config mismatch: p10 or theta differ from the simulated ones");

    const double a = params.a;
    const double tail = rw::transaction_probability(a);
    const auto& se = report.standard_errors;

    auto row = [](std::string name, double emp, double ana, double err) {
        double z;
        if (err > 0.0) z = (emp - ana) / err;
        else if (std::abs(emp - ana) <= 1e-12 * std::max(1.0, std::abs(ana))) z = 0.0;
        else z = std::copysign(std::numeric_limits<double>::infinity(), emp - ana);
        return Deviation{std::move(name), emp, ana, err, z};
    };

    std::vector<Deviation> out;
    out.push_back(row("acceptance_freq", report.acceptance_freq, tail, se.acceptance_freq));
    out.push_back(row("mean_waiting_rounds", report.mean_waiting_rounds, 1.0 / tail, se.mean_waiting_rounds));
    out.push_back(row("var_waiting_rounds", report.var_waiting_rounds, (1.0 - tail) / (tail * tail),
                      se.var_waiting_rounds));
    out.push_back(row("empirical_expected_tau", report.empirical_expected_tau,
                      rw::expected_waiting_time(a, params.theta), se.empirical_expected_tau));
    if (report.deals_10 > 0)
        out.push_back(row("mean_log_price_10", report.mean_log_price_10, rw::expected_log_price_10(a),
                          se.mean_log_price_10));
    if (report.deals_01 > 0)
        out.push_back(row("mean_log_price_01", report.mean_log_price_01, rw::expected_log_price_01(a),
                          se.mean_log_price_01));
    out.push_back(row("empirical_rho", report.empirical_rho, rw::profit_intensity(a, params.p10) / params.theta,
                      se.empirical_rho));
    out.push_back(row("share_10", report.share_10, params.p10, se.share_10));
    return out;
}

}  // namespace qbargain::mc
