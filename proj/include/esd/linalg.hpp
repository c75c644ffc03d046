// linalg.hpp
// Fixed-size complex matrices for two-qubit work, plus a Hermitian
// eigensolver (cyclic Jacobi) and the closed-form X-block spectrum.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace esd {

using Complex = std::complex<double>;

template <std::size_t N>
using SquareMatrix = std::array<std::array<Complex, N>, N>;

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;

/// Thrown when an input lies outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

template <std::size_t N>
constexpr SquareMatrix<N> identity() {
    SquareMatrix<N> m{};
    for (std::size_t i = 0; i < N; ++i) m[i][i] = 1.0;
    return m;
}

template <std::size_t N>
SquareMatrix<N> operator*(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    SquareMatrix<N> c{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            if (a[i][k] == Complex{}) continue;
            for (std::size_t j = 0; j < N; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

template <std::size_t N>
SquareMatrix<N> operator+(SquareMatrix<N> a, const SquareMatrix<N>& b) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) a[i][j] += b[i][j];
    return a;
}

template <std::size_t N>
SquareMatrix<N> operator-(SquareMatrix<N> a, const SquareMatrix<N>& b) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) a[i][j] -= b[i][j];
    return a;
}

template <std::size_t N>
SquareMatrix<N> scaled(SquareMatrix<N> a, Complex s) {
    for (auto& row : a)
        for (auto& e : row) e *= s;
    return a;
}

template <std::size_t N>
SquareMatrix<N> adjoint(const SquareMatrix<N>& a) {
    SquareMatrix<N> r{};
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) r[j][i] = std::conj(a[i][j]);
    return r;
}

template <std::size_t N>
Complex trace(const SquareMatrix<N>& a) {
    Complex t{};
    for (std::size_t i = 0; i < N; ++i) t += a[i][i];
    return t;
}

/// Largest elementwise modulus of a - b.
template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

template <std::size_t N>
double frobenius_norm(const SquareMatrix<N>& a) {
    double s = 0.0;
    for (const auto& row : a)
        for (const auto& e : row) s += std::norm(e);
    return std::sqrt(s);
}

/// max |a(i,j) - conj(a(j,i))|
template <std::size_t N>
double hermiticity_defect(const SquareMatrix<N>& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j) m = std::max(m, std::abs(a[i][j] - std::conj(a[j][i])));
    return m;
}

template <std::size_t N>
bool is_finite(const SquareMatrix<N>& a) {
    for (const auto& row : a)
        for (const auto& e : row)
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

/// Kronecker product; the left factor acts on the first (most significant) qubit.
inline Matrix4 kron(const Matrix2& a, const Matrix2& b) {
    Matrix4 r{};
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
    return r;
}

/// Eigenvalues of a 4x4 Hermitian matrix, ascending.
struct Spectrum4 {
    std::array<double, 4> eigenvalues{};

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
    double sum() const { return eigenvalues[0] + eigenvalues[1] + eigenvalues[2] + eigenvalues[3]; }
};

inline constexpr double kHermitianInputTolerance = 1e-10;
inline constexpr double kJacobiOffDiagonalStop = 1e-14;
inline constexpr int kJacobiMaxSweeps = 50;

namespace detail {

inline double off_diagonal_mass(const Matrix4& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) s += std::norm(a[i][j]);
    return std::sqrt(s);
}

}  // namespace detail

/// Cyclic Jacobi diagonalization of a Hermitian 4x4 matrix.
///
/// Each rotation first removes the phase of a(p,q) with a diagonal unitary,
/// then annihilates the (now real) element with a real Givens rotation.
/// Sweeps stop once the off-diagonal Frobenius mass drops below 1e-14
/// (relative to the matrix norm when that exceeds one) or after 50 sweeps.
inline Spectrum4 eig_hermitian4(const Matrix4& m) {
    if (!is_finite(m)) throw DomainError("eig_hermitian4: non-finite entry");
    if (hermiticity_defect(m) > kHermitianInputTolerance)
        throw DomainError("eig_hermitian4: matrix is not Hermitian");

    Matrix4 a = m;
    for (std::size_t i = 0; i < 4; ++i) {
        a[i][i] = a[i][i].real();
        for (std::size_t j = i + 1; j < 4; ++j) a[j][i] = std::conj(a[i][j]);
    }

    const double scale = std::max(1.0, frobenius_norm(a));
    for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
        if (detail::off_diagonal_mass(a) < kJacobiOffDiagonalStop * scale) break;
        for (std::size_t p = 0; p < 3; ++p) {
            for (std::size_t q = p + 1; q < 4; ++q) {
                const double g = std::abs(a[p][q]);
                if (g == 0.0) continue;
                const Complex phase = a[p][q] / g;

                const double app = a[p][p].real();
                const double aqq = a[q][q].real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // U = D R with D = diag(.., 1 at p, conj(phase) at q, ..).
                Matrix4 u = identity<4>();
                u[p][p] = c;
                u[p][q] = s;
                u[q][p] = -s * std::conj(phase);
                u[q][q] = c * std::conj(phase);

                a = adjoint(u) * a * u;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for (std::size_t i = 0; i < 4; ++i) a[i][i] = a[i][i].real();
            }
        }
    }

    Spectrum4 spec;
    for (std::size_t i = 0; i < 4; ++i) spec.eigenvalues[i] = a[i][i].real();
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());
    return spec;
}

/// Largest modulus among entries outside the diagonal and anti-diagonal.
inline double x_structure_defect(const Matrix4& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j && i + j != 3) d = std::max(d, std::abs(m[i][j]));
    return d;
}

namespace detail {

// Eigenvalues of [[a, c], [conj(c), b]], smaller first. The smaller root is
// taken from the determinant to avoid cancellation when it is near zero.
inline std::array<double, 2> hermitian2_eigenvalues(double a, double b, Complex c) {
    const double mean = 0.5 * (a + b);
    const double radius = std::hypot(0.5 * (a - b), std::abs(c));
    double hi = mean + radius;
    double lo = mean - radius;
    if (mean > 0.0 && hi != 0.0) lo = (a * b - std::norm(c)) / hi;
    else if (mean < 0.0 && lo != 0.0) hi = (a * b - std::norm(c)) / lo;
    return {lo, hi};
}

}  // namespace detail

/// Closed-form spectrum of an X-structured Hermitian matrix: it splits into
/// the outer block {0,3} and the inner block {1,2}.
inline Spectrum4 eig_x_block(const Matrix4& m, double structure_tolerance = 1e-12) {
    if (hermiticity_defect(m) > kHermitianInputTolerance)
        throw DomainError("eig_x_block: matrix is not Hermitian");
    if (x_structure_defect(m) > structure_tolerance)
        throw DomainError("eig_x_block: matrix is not X-structured");
    const auto outer = detail::hermitian2_eigenvalues(m[0][0].real(), m[3][3].real(), m[0][3]);
    const auto inner = detail::hermitian2_eigenvalues(m[1][1].real(), m[2][2].real(), m[1][2]);
    Spectrum4 spec{{outer[0], outer[1], inner[0], inner[1]}};
    std::sort(spec.eigenvalues.begin(), spec.eigenvalues.end());
    return spec;
}

}  // namespace esd
