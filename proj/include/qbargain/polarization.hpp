#pragma once

#include <array>
#include <complex>
#include <string>

namespace qbargain {

using Complex = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kRoundtripTol = 1e-10;

// Projective qubit state xi0|0> + xi1|1>. Never normalized implicitly; every
// formula divides by <xi|xi>.
class QubitState {
public:
    QubitState(Complex xi0, Complex xi1);

    Complex xi0() const { return xi0_; }
    Complex xi1() const { return xi1_; }
    double norm_sq() const { return std::norm(xi0_) + std::norm(xi1_); }

    QubitState scaled(Complex t) const { return {t * xi0_, t * xi1_}; }
    QubitState normalized() const;

    static QubitState zero() { return {1.0, 0.0}; }
    static QubitState one() { return {0.0, 1.0}; }

private:
    Complex xi0_;
    Complex xi1_;
};

struct BlochVector {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 1.0;

    double norm() const;
    double dot(const BlochVector& o) const { return x1 * o.x1 + x2 * o.x2 + x3 * o.x3; }
    BlochVector operator-() const { return {-x1, -x2, -x3}; }
};

// 2x2 complex matrix in row-major order: [a00, a01; a10, a11].
class Matrix2 {
public:
    Matrix2() = default;
    Matrix2(Complex a00, Complex a01, Complex a10, Complex a11) : m_{a00, a01, a10, a11} {}

    Complex operator()(int row, int col) const { return m_[2 * row + col]; }

    Matrix2 operator+(const Matrix2& o) const;
    Matrix2 operator-(const Matrix2& o) const;
    Matrix2 operator*(const Matrix2& o) const;
    Matrix2 operator*(Complex s) const;
    QubitState apply(const QubitState& s) const;

    Matrix2 adjoint() const;
    Complex trace() const { return m_[0] + m_[3]; }
    bool is_hermitian(double tol = kAlgebraTol) const;
    /// Largest entrywise modulus difference.
    double max_abs_diff(const Matrix2& o) const;
    /// Eigenvalues of a Hermitian matrix, ascending.
    std::array<double, 2> hermitian_eigenvalues() const;

    static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Matrix2 sigma1() { return {0.0, 1.0, 1.0, 0.0}; }
    static Matrix2 sigma2() { return {0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0}; }
    static Matrix2 sigma3() { return {1.0, 0.0, 0.0, -1.0}; }

private:
    std::array<Complex, 4> m_{};
};

// Orthonormal pair (b0, b1). Construct through make(), which checks
// orthonormality to kAlgebraTol.
struct Basis {
    QubitState b0;
    QubitState b1;

    static Basis make(const QubitState& b0, const QubitState& b1);
    static Basis standard() { return {QubitState::zero(), QubitState::one()}; }
    /// Basis whose |0> sits at r on the Bloch sphere.
    static Basis from_bloch(const BlochVector& r);
    /// Largest deviation from orthonormality.
    static double residual(const QubitState& b0, const QubitState& b1);
};

/// <a|b> = conj(a0) b0 + conj(a1) b1.
Complex inner(const QubitState& a, const QubitState& b);

/// Cayley-Klein map r = <xi|sigma xi> / <xi|xi>.
BlochVector bloch(const QubitState& s);

/// Stokes form (I + r.sigma)/2. Throws std::invalid_argument when |r| is
/// not 1 within kAlgebraTol.
Matrix2 projector_from_bloch(const BlochVector& r);

/// Inverse of bloch(). Phase convention: the first nonzero component is
/// real and non-negative.
QubitState state_from_bloch(const BlochVector& r);

/// |<a|b>|^2 / (<a|a><b|b>) = cos^2(alpha/2).
double transition_probability(const QubitState& a, const QubitState& b);

bool projective_equal(const QubitState& a, const QubitState& b);

std::string to_string(const QubitState& s);

}  // namespace qbargain
