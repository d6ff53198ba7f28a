#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace qbargain {

// Log-price intention laws. Alice's is over q = -ln c, Bob's over p = ln c.

struct Dirac {
    double location = 0.0;
};

struct Gaussian {
    double mean = 0.0;
    double sigma = 1.0;
};

// Piecewise-linear density on ascending nodes; zero outside them.
class GridDensity {
public:
    /// Throws std::invalid_argument unless the nodes ascend strictly, values
    /// are finite and non-negative, and the trapezoidal integral is 1 within
    /// kGridNormTol.
    GridDensity(std::vector<double> points, std::vector<double> density);

    const std::vector<double>& points() const { return points_; }
    const std::vector<double>& density() const { return density_; }

    double pdf(double x) const;
    double cdf(double x) const;
    double quantile(double u) const;
    double mean() const;

private:
    std::vector<double> points_;
    std::vector<double> density_;
    std::vector<double> cumulative_;  // CDF at each node
};

inline constexpr double kGridNormTol = 1e-8;
// Gaussian laws are treated as supported on mean +- kGaussianHalfWidth * sigma.
inline constexpr double kGaussianHalfWidth = 8.0;
inline constexpr std::size_t kDefaultGridPoints = 4001;

using LogPriceDistribution = std::variant<Dirac, Gaussian, GridDensity>;

/// Throws std::invalid_argument for non-finite parameters or sigma <= 0.
void validate(const LogPriceDistribution& d);

double cdf(const LogPriceDistribution& d, double x);
/// Density of a continuous law. Throws std::logic_error for Dirac.
double pdf(const LogPriceDistribution& d, double x);
double quantile(const LogPriceDistribution& d, double u);
double mean(const LogPriceDistribution& d);
bool is_dirac(const LogPriceDistribution& d);

/// Samples a continuous law on n uniform nodes (Gaussian: mean +- 8 sigma)
/// and renormalizes by the trapezoidal rule. Grid input is returned as is.
GridDensity to_grid(const LogPriceDistribution& d, std::size_t n = kDefaultGridPoints);

struct PricingPair {
    LogPriceDistribution alice;  // over q
    LogPriceDistribution bob;    // over p
};

enum class Polarization { P10, P01 };

/// Iverson bracket [q + p <= 0].
inline bool accepts(double q, double p) { return q + p <= 0.0; }

/// P(q + p <= 0) for independent q ~ alice, p ~ bob. Closed forms for any
/// Dirac side and for Gaussian x Gaussian; composite Gauss-Legendre otherwise.
double acceptance_probability(const PricingPair& pair);

struct PointMass {
    double location;
    double weight;
};

// Density of ln c: symbolic point masses plus a continuous part kept as a
// function on [breaks.front(), breaks.back()]. `points`/`densities` sample
// the continuous part for export.
struct PriceDensity {
    std::vector<PointMass> atoms;
    std::function<double(double)> continuous;
    std::vector<double> breaks;
    double panel_width = 1.0;
    std::vector<double> points;
    std::vector<double> densities;
    double mass = 0.0;
    bool normalized = false;

    double density_at(double x) const;
    /// Integral of g against the measure (atoms included).
    double integrate(const std::function<double(double)>& g) const;
};

/// Unnormalized density of ln c restricted to q + p <= 0.
///   P10: F_B(x) f_A(-x)      P01: F_A(-x) f_B(x)
PriceDensity price_log_density(const PricingPair& pair, Polarization pol,
                               std::size_t sample_points = kDefaultGridPoints);

/// Scales to unit mass. Throws std::domain_error("transaction impossible") when mass is 0.
PriceDensity normalize(const PriceDensity& d);

/// E(ln c) under a normalized density. Throws std::invalid_argument otherwise.
double expected_log_price(const PriceDensity& d);

}  // namespace qbargain
