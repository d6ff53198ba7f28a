#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <vector>

namespace qbargain::quad {

inline constexpr int kOrder = 16;

struct GaussLegendreRule {
    std::array<double, kOrder> nodes;
    std::array<double, kOrder> weights;
};

/// 16-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 31.
const GaussLegendreRule& gauss_legendre_rule();

/// Integral of f over [lo, hi] with one application of the rule.
template <class F>
double panel(F&& f, double lo, double hi) {
    const auto& rule = gauss_legendre_rule();
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double sum = 0.0;
    for (int i = 0; i < kOrder; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return sum * half;
}

/// Composite Gauss-Legendre over [breaks.front(), breaks.back()]. Every
/// interval between consecutive breakpoints is split into panels no wider
/// than max_width. Breakpoints must be sorted; duplicates are skipped.
template <class F>
double integrate(F&& f, std::span<const double> breaks, double max_width) {
    double total = 0.0;
    for (std::size_t k = 1; k < breaks.size(); ++k) {
        const double lo = breaks[k - 1];
        const double hi = breaks[k];
        if (!(hi > lo)) continue;
        const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((hi - lo) / max_width)));
        const double h = (hi - lo) / static_cast<double>(pieces);
        for (std::size_t j = 0; j < pieces; ++j) {
            const double a = lo + h * static_cast<double>(j);
            const double b = (j + 1 == pieces) ? hi : a + h;
            total += panel(f, a, b);
        }
    }
    return total;
}

/// Sorts, removes duplicates and clips breakpoints to [lo, hi], always
/// keeping lo and hi themselves.
std::vector<double> clip_breaks(std::vector<double> breaks, double lo, double hi);

}  // namespace qbargain::quad
