#pragma once

#include "qbargain/polarization.hpp"

namespace qbargain::thermo {

// Mixed bargaining polarization rho = (I + r.sigma tanh(beta_s/2)) / 2.
struct PolarizationDensity {
    double beta_s = 0.0;  // inverse spin temperature
    BlochVector r;
};

struct Canonical {
    PolarizationDensity pd;
    bool degenerate;  // beta_s == 0: r is undetermined
};

/// (beta_s, r) -> (|beta_s|, sign(beta_s) r). At beta_s = 0, r is kept and
/// `degenerate` is set.
Canonical canonicalize(const PolarizationDensity& pd);

Matrix2 density_matrix(const PolarizationDensity& pd);

struct ConvexWeights {
    double w_plus;   // weight of P_r
    double w_minus;  // weight of P_{-r}
};

/// w_plus = 1/(1 + e^{-beta_s}), w_minus = 1/(1 + e^{beta_s}).
ConvexWeights convex_weights(double beta_s);

/// -Tr(rho ln rho), in [0, ln 2].
double shannon_entropy(double beta_s);

// sigma^2 tanh(h_e beta / (2 theta)) = conserved
struct RiskTempParams {
    double h_e;
    double theta;
    double conserved;

    void validate() const;
};

/// (2 theta / h_e) artanh(conserved / sigma^2). Throws std::domain_error when
/// conserved >= sigma^2.
double risk_beta_from_sigma(double sigma, const RiskTempParams& params);

/// sqrt(conserved / tanh(h_e beta / (2 theta))). Throws std::invalid_argument for beta <= 0.
double sigma_from_risk_beta(double beta, const RiskTempParams& params);

}  // namespace qbargain::thermo
