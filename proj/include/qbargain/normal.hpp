#pragma once

// Standard normal density, CDF and quantile shared by the analytic
// pricing/game code and the Monte Carlo sampler.

namespace qbargain::normal {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;

/// eta(x), the standard normal density.
double pdf(double x);

/// Phi(x). Computed from erfc so the lower tail keeps full relative precision.
double cdf(double x);

/// Phi^{-1}(u) for u in (0, 1). Returns -inf/+inf at the endpoints.
double quantile(double u);

}  // namespace qbargain::normal
