#include "qbargain/rwgame.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qbargain/normal.hpp"

namespace qbargain::rw {

namespace {

void check_p10(double p10) {
    if (!(p10 >= 0.0 && p10 <= 1.0)) throw std::invalid_argument("p10 must lie in [0, 1]");
}

// Sign-carrying part of d rho / da; the positive factor 1/(1 + Phi(-a))^2 is dropped.
double slope_numerator(double a, double p10) {
    const double tail = normal::cdf(-a);
    const double eta = normal::pdf(a);
    const double num = p10 * a * tail + (1.0 - p10) * eta;
    const double dnum = p10 * (tail - a * eta) - (1.0 - p10) * a * eta;
    return dnum * (1.0 + tail) + num * eta;
}

}  // namespace

void GameParams::validate() const {
    if (!std::isfinite(a)) throw std::invalid_argument("a must be finite");
    check_p10(p10);
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
}

double transaction_probability(double a) { return normal::cdf(-a); }

double expected_waiting_time(double a, double theta) {
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
    return (1.0 + 1.0 / transaction_probability(a)) * theta;
}

double expected_log_price_01(double a) { return -normal::pdf(a) / normal::cdf(-a); }

double profit_intensity(double a, double p10) {
    const double tail = normal::cdf(-a);
    return (p10 * a * tail + (1.0 - p10) * normal::pdf(a)) / (1.0 + tail);
}

ProfitResult evaluate(const GameParams& params) {
    params.validate();
    return {profit_intensity(params.a, params.p10), transaction_probability(params.a),
            expected_waiting_time(params.a, params.theta)};
}

Optimum maximize_profit(double p10) {
    check_p10(p10);
    auto f = [p10](double a) { return profit_intensity(a, p10); };

    // Coarse scan to bracket the global maximum.
    constexpr int n = 2000;
    const double h = (kSearchHi - kSearchLo) / n;
    int best = 0;
    double best_val = f(kSearchLo);
    for (int i = 1; i <= n; ++i) {
        const double v = f(kSearchLo + h * i);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double lo = kSearchLo + h * std::max(0, best - 1);
    double hi = kSearchLo + h * std::min(n, best + 1);

    // Golden-section refinement.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-7) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = f(x1);
        }
    }

    // Near the optimum rho is flat to rounding, so finish by bisecting the
    // sign of the analytic slope on the golden-section bracket.
    double slo = slope_numerator(lo, p10);
    double shi = slope_numerator(hi, p10);
    if (slo > 0.0 && shi < 0.0) {
        for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (slope_numerator(mid, p10) > 0.0) lo = mid;
            else hi = mid;
        }
    }
    const double a_star = 0.5 * (lo + hi);
    return {a_star, f(a_star)};
}

FixedPoint fixed_point(double p10, double tol, double a0) {
    check_p10(p10);
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    double a = a0;
    for (int it = 1; it <= kFixedPointCap; ++it) {
        const double next = profit_intensity(a, p10);
        if (std::abs(next - a) < tol) return {next, it};
        a = next;
    }
    throw std::runtime_error("fixed-point iteration did not converge in " + std::to_string(kFixedPointCap) +
                             " iterations");
}

void SurfaceSpec::validate() const {
    if (!(a_min < a_max)) throw std::invalid_argument("a_min must be below a_max");
    if (a_steps < 2 || p01_steps < 2) throw std::invalid_argument("grid steps must be at least 2");
}

double SurfaceSpec::a_at(std::size_t i) const {
    return a_min + (a_max - a_min) * static_cast<double>(i) / static_cast<double>(a_steps - 1);
}

double SurfaceSpec::p01_at(std::size_t j) const {
    return static_cast<double>(j) / static_cast<double>(p01_steps - 1);
}

std::vector<SurfaceCell> profit_surface(const SurfaceSpec& spec) {
    spec.validate();
    const auto total = static_cast<std::ptrdiff_t>(spec.a_steps * spec.p01_steps);
    std::vector<SurfaceCell> cells(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < total; ++k) {
        const auto i = static_cast<std::size_t>(k) / spec.p01_steps;
        const auto j = static_cast<std::size_t>(k) % spec.p01_steps;
        const double a = spec.a_at(i);
        const double p01 = spec.p01_at(j);
        cells[static_cast<std::size_t>(k)] = {a, p01, profit_intensity(a, 1.0 - p01)};
    }
    return cells;
}

std::vector<SurfaceCell> profit_surface_serial(const SurfaceSpec& spec) {
    spec.validate();
    std::vector<SurfaceCell> cells;
    cells.reserve(spec.a_steps * spec.p01_steps);
    for (std::size_t i = 0; i < spec.a_steps; ++i)
        for (std::size_t j = 0; j < spec.p01_steps; ++j) {
            const double a = spec.a_at(i);
            const double p01 = spec.p01_at(j);
            cells.push_back({a, p01, profit_intensity(a, 1.0 - p01)});
        }
    return cells;
}

}  // namespace qbargain::rw
