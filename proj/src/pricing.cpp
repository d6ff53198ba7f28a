#include "qbargain/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qbargain/normal.hpp"
#include "qbargain/quadrature.hpp"

namespace qbargain {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

// ---------------------------------------------------------------------------
// GridDensity

GridDensity::GridDensity(std::vector<double> points, std::vector<double> density)
    : points_(std::move(points)), density_(std::move(density)) {
    if (points_.size() < 2 || points_.size() != density_.size())
        throw std::invalid_argument("grid needs at least two nodes and one density value per node");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i]) || !std::isfinite(density_[i]))
            throw std::invalid_argument("grid has non-finite entries");
        if (density_[i] < 0.0) throw std::invalid_argument("grid density must be non-negative");
        if (i > 0 && !(points_[i] > points_[i - 1])) throw std::invalid_argument("grid nodes must ascend strictly");
    }
    cumulative_.resize(points_.size());
    cumulative_[0] = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i)
        cumulative_[i] = cumulative_[i - 1] + 0.5 * (density_[i] + density_[i - 1]) * (points_[i] - points_[i - 1]);
    if (std::abs(cumulative_.back() - 1.0) > kGridNormTol)
        throw std::invalid_argument("grid density does not integrate to 1 (integral " +
                                    std::to_string(cumulative_.back()) + ")");
}

double GridDensity::pdf(double x) const {
    if (x < points_.front() || x > points_.back()) return 0.0;
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    if (it == points_.end()) return density_.back();
    const auto i = static_cast<std::size_t>(it - points_.begin()) - 1;
    const double t = (x - points_[i]) / (points_[i + 1] - points_[i]);
    return density_[i] + t * (density_[i + 1] - density_[i]);
}

double GridDensity::cdf(double x) const {
    if (x <= points_.front()) return 0.0;
    if (x >= points_.back()) return cumulative_.back();
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    const auto i = static_cast<std::size_t>(it - points_.begin()) - 1;
    const double h = points_[i + 1] - points_[i];
    const double t = x - points_[i];
    return cumulative_[i] + density_[i] * t + (density_[i + 1] - density_[i]) * t * t / (2.0 * h);
}

double GridDensity::quantile(double u) const {
    const double target = u * cumulative_.back();
    if (target <= 0.0) return points_.front();
    if (target >= cumulative_.back()) return points_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    const auto i = static_cast<std::size_t>(it - cumulative_.begin()) - 1;
    const double h = points_[i + 1] - points_[i];
    const double f0 = density_[i];
    const double slope = (density_[i + 1] - f0) / h;
    const double rem = target - cumulative_[i];
    // Solve f0 t + slope t^2 / 2 = rem with the cancellation-free root.
    double t;
    if (std::abs(slope) < 1e-300) {
        t = f0 > 0.0 ? rem / f0 : 0.0;
    } else {
        t = 2.0 * rem / (f0 + std::sqrt(std::max(0.0, f0 * f0 + 2.0 * slope * rem)));
    }
    return points_[i] + std::clamp(t, 0.0, h);
}

double GridDensity::mean() const {
    // Exact for the piecewise-linear interpolant.
    double m = 0.0;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const double a = points_[i - 1], b = points_[i];
        const double fa = density_[i - 1], fb = density_[i];
        m += (b - a) * (fa * (2.0 * a + b) + fb * (a + 2.0 * b)) / 6.0;
    }
    return m;
}

// ---------------------------------------------------------------------------
// LogPriceDistribution helpers

void validate(const LogPriceDistribution& d) {
    std::visit(overloaded{[](const Dirac& x) {
                              if (!std::isfinite(x.location)) throw std::invalid_argument("Dirac location must be finite");
                          },
                          [](const Gaussian& g) {
                              if (!std::isfinite(g.mean)) throw std::invalid_argument("Gaussian mean must be finite");
                              if (!(g.sigma > 0.0) || !std::isfinite(g.sigma))
                                  throw std::invalid_argument("Gaussian dispersion must be positive");
                          },
                          [](const GridDensity&) {}},
               d);
}

double cdf(const LogPriceDistribution& d, double x) {
    return std::visit(overloaded{[x](const Dirac& p) { return x >= p.location ? 1.0 : 0.0; },
                                 [x](const Gaussian& g) { return normal::cdf((x - g.mean) / g.sigma); },
                                 [x](const GridDensity& g) { return g.cdf(x); }},
                      d);
}

double pdf(const LogPriceDistribution& d, double x) {
    return std::visit(
        overloaded{[](const Dirac&) -> double { throw std::logic_error("Dirac law has no density function"); },
                   [x](const Gaussian& g) { return normal::pdf((x - g.mean) / g.sigma) / g.sigma; },
                   [x](const GridDensity& g) { return g.pdf(x); }},
        d);
}

double quantile(const LogPriceDistribution& d, double u) {
    return std::visit(overloaded{[](const Dirac& p) { return p.location; },
                                 [u](const Gaussian& g) { return g.mean + g.sigma * normal::quantile(u); },
                                 [u](const GridDensity& g) { return g.quantile(u); }},
                      d);
}

double mean(const LogPriceDistribution& d) {
    return std::visit(overloaded{[](const Dirac& p) { return p.location; }, [](const Gaussian& g) { return g.mean; },
                                 [](const GridDensity& g) { return g.mean(); }},
                      d);
}

bool is_dirac(const LogPriceDistribution& d) { return std::holds_alternative<Dirac>(d); }

GridDensity to_grid(const LogPriceDistribution& d, std::size_t n) {
    if (const auto* g = std::get_if<GridDensity>(&d)) return *g;
    const auto* gauss = std::get_if<Gaussian>(&d);
    if (!gauss) throw std::invalid_argument("a Dirac law has no grid representation");
    if (n < 2) throw std::invalid_argument("grid needs at least two nodes");
    const double lo = gauss->mean - kGaussianHalfWidth * gauss->sigma;
    const double hi = gauss->mean + kGaussianHalfWidth * gauss->sigma;
    std::vector<double> x(n), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
        f[i] = pdf(d, x[i]);
    }
    double total = 0.0;
    for (std::size_t i = 1; i < n; ++i) total += 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
    for (auto& v : f) v /= total;
    return {std::move(x), std::move(f)};
}

namespace {

struct Support {
    double lo;
    double hi;
};

Support support(const LogPriceDistribution& d) {
    return std::visit(overloaded{[](const Dirac& p) { return Support{p.location, p.location}; },
                                 [](const Gaussian& g) {
                                     return Support{g.mean - kGaussianHalfWidth * g.sigma,
                                                    g.mean + kGaussianHalfWidth * g.sigma};
                                 },
                                 [](const GridDensity& g) { return Support{g.points().front(), g.points().back()}; }},
                      d);
}

// Nodes where a law's pdf or cdf has a kink, scaled by `sign`.
void append_nodes(const LogPriceDistribution& d, double sign, std::vector<double>& out) {
    if (const auto* g = std::get_if<GridDensity>(&d))
        for (double p : g->points()) out.push_back(sign * p);
    if (const auto* p = std::get_if<Dirac>(&d)) out.push_back(sign * p->location);
}

double panel_width_for(const PricingPair& pair) {
    double w = std::numeric_limits<double>::infinity();
    for (const auto* d : {&pair.alice, &pair.bob})
        if (const auto* g = std::get_if<Gaussian>(d)) w = std::min(w, 0.5 * g->sigma);
    return w;
}

}  // namespace

double acceptance_probability(const PricingPair& pair) {
    validate(pair.alice);
    validate(pair.bob);
    if (const auto* a = std::get_if<Dirac>(&pair.alice)) return cdf(pair.bob, -a->location);
    if (const auto* b = std::get_if<Dirac>(&pair.bob)) return cdf(pair.alice, -b->location);
    const auto* ga = std::get_if<Gaussian>(&pair.alice);
    const auto* gb = std::get_if<Gaussian>(&pair.bob);
    if (ga && gb) return normal::cdf(-(ga->mean + gb->mean) / std::hypot(ga->sigma, gb->sigma));

    // Some side is a grid: integrate f_A(q) F_B(-q) over Alice's support.
    const Support s = support(pair.alice);
    std::vector<double> nodes;
    append_nodes(pair.alice, 1.0, nodes);
    append_nodes(pair.bob, -1.0, nodes);
    const auto breaks = quad::clip_breaks(std::move(nodes), s.lo, s.hi);
    const double width = std::min(panel_width_for(pair), s.hi - s.lo);
    const double p = quad::integrate([&](double q) { return pdf(pair.alice, q) * cdf(pair.bob, -q); }, breaks, width);
    if (!std::isfinite(p)) throw std::invalid_argument("acceptance integral diverged");
    return std::clamp(p, 0.0, 1.0);
}

// ---------------------------------------------------------------------------
// PriceDensity

double PriceDensity::density_at(double x) const {
    if (!continuous || breaks.empty() || x < breaks.front() || x > breaks.back()) return 0.0;
    return continuous(x);
}

double PriceDensity::integrate(const std::function<double(double)>& g) const {
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight * g(a.location);
    if (continuous && breaks.size() >= 2)
        total += quad::integrate([&](double x) { return g(x) * continuous(x); }, breaks, panel_width);
    return total;
}

PriceDensity price_log_density(const PricingPair& pair, Polarization pol, std::size_t sample_points) {
    validate(pair.alice);
    validate(pair.bob);

    // Map the polarization onto one shape: density(x) = F_gate(s x) f_src(t x)
    // where the source law supplies the price and the gate is the CDF of the
    // counterparty evaluated at the acceptance boundary.
    //   P10: src = Alice at -x, gate = Bob's CDF at x
    //   P01: src = Bob at x,    gate = Alice's CDF at -x
    const bool p10 = pol == Polarization::P10;
    const LogPriceDistribution& src = p10 ? pair.alice : pair.bob;
    const LogPriceDistribution& gate = p10 ? pair.bob : pair.alice;
    const double src_sign = p10 ? -1.0 : 1.0;
    const double gate_sign = p10 ? 1.0 : -1.0;

    PriceDensity out;
    if (const auto* d = std::get_if<Dirac>(&src)) {
        const double x = src_sign * d->location;
        const double w = cdf(gate, gate_sign * x);
        if (w > 0.0) out.atoms.push_back({x, w});
    } else {
        // Support of f_src(src_sign x), clipped where the gate CDF vanishes.
        const Support s = support(src);
        double lo = std::min(src_sign * s.lo, src_sign * s.hi);
        double hi = std::max(src_sign * s.lo, src_sign * s.hi);
        if (!std::holds_alternative<Gaussian>(gate)) {
            // Gate CDF is zero below its first node: gate_sign x < g.lo.
            const double g_lo = support(gate).lo;
            if (gate_sign > 0.0) lo = std::max(lo, g_lo);
            else hi = std::min(hi, -g_lo);
        }
        if (hi > lo) {
            std::vector<double> nodes;
            append_nodes(src, src_sign, nodes);
            append_nodes(gate, gate_sign, nodes);
            out.breaks = quad::clip_breaks(std::move(nodes), lo, hi);
            out.panel_width = std::min(panel_width_for(pair), hi - lo);
            out.continuous = [src, gate, src_sign, gate_sign](double x) {
                return cdf(gate, gate_sign * x) * pdf(src, src_sign * x);
            };
            out.points.resize(sample_points);
            out.densities.resize(sample_points);
            for (std::size_t i = 0; i < sample_points; ++i) {
                const double x = sample_points == 1 ? lo
                                                    : lo + (hi - lo) * static_cast<double>(i) /
                                                               static_cast<double>(sample_points - 1);
                out.points[i] = x;
                out.densities[i] = out.continuous(x);
            }
        }
    }
    out.mass = out.integrate([](double) { return 1.0; });
    return out;
}

PriceDensity normalize(const PriceDensity& d) {
    if (d.normalized) return d;
    if (!(d.mass > 0.0)) throw std::domain_error("transaction impossible");
    const double k = 1.0 / d.mass;
    PriceDensity out = d;
    for (auto& a : out.atoms) a.weight *= k;
    if (d.continuous) out.continuous = [f = d.continuous, k](double x) { return k * f(x); };
    for (auto& v : out.densities) v *= k;
    out.mass = out.integrate([](double) { return 1.0; });
    out.normalized = true;
    return out;
}

double expected_log_price(const PriceDensity& d) {
    if (!d.normalized) throw std::invalid_argument("expected_log_price needs a normalized density");
    return d.integrate([](double x) { return x; });
}

}  // namespace qbargain
