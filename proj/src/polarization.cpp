#include "qbargain/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qbargain {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

QubitState::QubitState(Complex xi0, Complex xi1) : xi0_(xi0), xi1_(xi1) {
    if (!finite(xi0) || !finite(xi1)) throw std::invalid_argument("qubit state has non-finite amplitude");
    if (xi0 == Complex{} && xi1 == Complex{}) throw std::invalid_argument("zero vector is not a qubit state");
}

QubitState QubitState::normalized() const { return scaled(1.0 / std::sqrt(norm_sq())); }

double BlochVector::norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }

Matrix2 Matrix2::operator+(const Matrix2& o) const {
    return {m_[0] + o.m_[0], m_[1] + o.m_[1], m_[2] + o.m_[2], m_[3] + o.m_[3]};
}

Matrix2 Matrix2::operator-(const Matrix2& o) const {
    return {m_[0] - o.m_[0], m_[1] - o.m_[1], m_[2] - o.m_[2], m_[3] - o.m_[3]};
}

Matrix2 Matrix2::operator*(const Matrix2& o) const {
    return {m_[0] * o.m_[0] + m_[1] * o.m_[2], m_[0] * o.m_[1] + m_[1] * o.m_[3],
            m_[2] * o.m_[0] + m_[3] * o.m_[2], m_[2] * o.m_[1] + m_[3] * o.m_[3]};
}

Matrix2 Matrix2::operator*(Complex s) const { return {m_[0] * s, m_[1] * s, m_[2] * s, m_[3] * s}; }

QubitState Matrix2::apply(const QubitState& s) const {
    return {m_[0] * s.xi0() + m_[1] * s.xi1(), m_[2] * s.xi0() + m_[3] * s.xi1()};
}

Matrix2 Matrix2::adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
}

bool Matrix2::is_hermitian(double tol) const { return max_abs_diff(adjoint()) <= tol; }

double Matrix2::max_abs_diff(const Matrix2& o) const {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(m_[i] - o.m_[i]));
    return d;
}

std::array<double, 2> Matrix2::hermitian_eigenvalues() const {
    const double a = m_[0].real();
    const double d = m_[3].real();
    const double half_tr = 0.5 * (a + d);
    const double disc = std::hypot(0.5 * (a - d), std::abs(m_[1]));
    return {half_tr - disc, half_tr + disc};
}

Basis Basis::make(const QubitState& b0, const QubitState& b1) {
    const double res = residual(b0, b1);
    if (res > kAlgebraTol) {
        std::ostringstream msg;
        msg << "basis is not orthonormal (residual " << res << ")";
        throw std::invalid_argument(msg.str());
    }
    return {b0, b1};
}

Basis Basis::from_bloch(const BlochVector& r) {
    return {state_from_bloch(r), state_from_bloch(-r)};
}

double Basis::residual(const QubitState& b0, const QubitState& b1) {
    return std::max({std::abs(b0.norm_sq() - 1.0), std::abs(b1.norm_sq() - 1.0), std::abs(inner(b0, b1))});
}

Complex inner(const QubitState& a, const QubitState& b) {
    return std::conj(a.xi0()) * b.xi0() + std::conj(a.xi1()) * b.xi1();
}

BlochVector bloch(const QubitState& s) {
    // Rescale first so |xi| near the overflow/underflow limits stays exact.
    const double scale = std::max({std::abs(s.xi0().real()), std::abs(s.xi0().imag()),
                                   std::abs(s.xi1().real()), std::abs(s.xi1().imag())});
    const Complex z0 = s.xi0() / scale;
    const Complex z1 = s.xi1() / scale;
    const double n0 = std::norm(z0);
    const double n1 = std::norm(z1);
    const double n = n0 + n1;
    const Complex c = 2.0 * std::conj(z0) * z1;
    return {c.real() / n, c.imag() / n, (n0 - n1) / n};
}

Matrix2 projector_from_bloch(const BlochVector& r) {
    if (std::abs(r.norm() - 1.0) > kAlgebraTol) throw std::invalid_argument("Bloch vector is not a unit vector");
    const Complex off{0.5 * r.x1, -0.5 * r.x2};
    return {0.5 * (1.0 + r.x3), off, std::conj(off), 0.5 * (1.0 - r.x3)};
}

QubitState state_from_bloch(const BlochVector& r) {
    if (std::abs(r.norm() - 1.0) > kAlgebraTol) throw std::invalid_argument("Bloch vector is not a unit vector");
    if (r.x3 >= 0.0) {
        const double a = std::sqrt(0.5 * (1.0 + r.x3));
        return {a, Complex{r.x1, r.x2} / std::sqrt(2.0 * (1.0 + r.x3))};
    }
    // Southern hemisphere: build from (1 - x3), which stays away from zero.
    const double rho = std::hypot(r.x1, r.x2);
    const double m = std::sqrt(2.0 * (1.0 - r.x3));
    const double b = std::sqrt(0.5 * (1.0 - r.x3));
    if (rho == 0.0) return {0.0, 1.0};
    return {rho / m, b * Complex{r.x1 / rho, r.x2 / rho}};
}

double transition_probability(const QubitState& a, const QubitState& b) {
    const double p = std::norm(inner(a, b)) / (a.norm_sq() * b.norm_sq());
    return std::clamp(p, 0.0, 1.0);
}

bool projective_equal(const QubitState& a, const QubitState& b) {
    return transition_probability(a, b) >= 1.0 - kRoundtripTol;
}

std::string to_string(const QubitState& s) {
    std::ostringstream os;
    os << "(" << s.xi0() << ", " << s.xi1() << ")";
    return os.str();
}

}  // namespace qbargain
