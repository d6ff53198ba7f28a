#pragma once

// Test-only reference computations. Nothing here calls into the library's
// normal, quadrature or optimizer code.

#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

namespace oracle {

// Frozen from a 40-digit mpmath solve of the same equations.
inline constexpr double kArgmaxP10One = 0.850959833247706179;     // root of Phi(-a)(1+Phi(-a)) = a eta(a)
inline constexpr double kRhoMaxP10One = 0.140284374131998513;
inline constexpr double kFixedPointP10Zero = 0.276029804798143297;  // root of a = eta(a)/(1+Phi(-a))
inline constexpr double kTailAt085096 = 0.197395786524482655;      // Phi(-0.85096)
inline constexpr double kTruncMeanAt085096 = -1.40711217745432935;  // -eta(0.85096)/Phi(-0.85096)
inline constexpr double kAtanhHalf = 0.549306144334054846;

inline double phi(double x) {
    static const boost::math::normal_distribution<double> n;
    return boost::math::cdf(n, x);
}

inline double eta(double x) {
    static const boost::math::normal_distribution<double> n;
    return boost::math::pdf(n, x);
}

inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, 1e-14);
}

// Plain bisection; f(lo) and f(hi) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Profit intensity evaluated by direct quadrature of
//   int_{-inf}^{-a} (p10 a - (1-p10) x) eta(x) dx / (1 + int_{-inf}^{-a} eta).
inline double rho_by_quadrature(double a, double p10) {
    const double lo = -a - 40.0;
    const double num = integrate([&](double x) { return (p10 * a - (1.0 - p10) * x) * eta(x); }, lo, -a);
    const double tail = integrate([](double x) { return eta(x); }, lo, -a);
    return num / (1.0 + tail);
}

struct Random {
    std::mt19937_64 eng;
    explicit Random(std::uint64_t seed) : eng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
    std::complex<double> complex() { return {gauss(), gauss()}; }
    // Nonzero complex scale with modulus spread over a few decades.
    std::complex<double> scale() {
        return std::polar(std::pow(10.0, uniform(-3.0, 3.0)), uniform(0.0, 2.0 * std::numbers::pi));
    }
};

}  // namespace oracle
