#include "qbargain/thermo.hpp"

#include <cmath>
#include <stdexcept>

namespace qbargain::thermo {

namespace {

// 1/(1 + e^{-x}) without overflow for large |x|.
double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// ln(1 + e^x)
double softplus(double x) {
    if (x > 30.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

void check_pd(const PolarizationDensity& pd) {
    if (!std::isfinite(pd.beta_s)) throw std::invalid_argument("beta_s must be finite");
    if (std::abs(pd.r.norm() - 1.0) > kAlgebraTol) throw std::invalid_argument("r must be a unit vector");
}

}  // namespace

Canonical canonicalize(const PolarizationDensity& pd) {
    check_pd(pd);
    if (pd.beta_s == 0.0) return {pd, true};
    if (pd.beta_s > 0.0) return {pd, false};
    return {{-pd.beta_s, -pd.r}, false};
}

Matrix2 density_matrix(const PolarizationDensity& pd) {
    check_pd(pd);
    const double t = std::tanh(0.5 * pd.beta_s);
    const Complex off{0.5 * t * pd.r.x1, -0.5 * t * pd.r.x2};
    return {0.5 * (1.0 + t * pd.r.x3), off, std::conj(off), 0.5 * (1.0 - t * pd.r.x3)};
}

ConvexWeights convex_weights(double beta_s) {
    if (!std::isfinite(beta_s)) throw std::invalid_argument("beta_s must be finite");
    return {logistic(beta_s), logistic(-beta_s)};
}

double shannon_entropy(double beta_s) {
    const auto w = convex_weights(beta_s);
    // ln(1+e^b)/(1+e^b) + ln(1+e^-b)/(1+e^-b)
    return w.w_minus * softplus(beta_s) + w.w_plus * softplus(-beta_s);
}

void RiskTempParams::validate() const {
    if (!(h_e > 0.0) || !(theta > 0.0) || !(conserved > 0.0))
        throw std::invalid_argument("h_e, theta and const must all be positive");
}

double risk_beta_from_sigma(double sigma, const RiskTempParams& params) {
    params.validate();
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const double ratio = params.conserved / (sigma * sigma);
    if (ratio >= 1.0)
        throw std::domain_error("dispersion too small for given constant (const/sigma^2 must be below tanh range 1)");
    return 2.0 * params.theta / params.h_e * std::atanh(ratio);
}

double sigma_from_risk_beta(double beta, const RiskTempParams& params) {
    params.validate();
    if (!(beta > 0.0)) throw std::invalid_argument("risk beta must be positive");
    return std::sqrt(params.conserved / std::tanh(params.h_e * beta / (2.0 * params.theta)));
}

}  // namespace qbargain::thermo
