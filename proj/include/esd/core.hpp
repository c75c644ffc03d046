// core.hpp
// Two-qubit state types shared by every other header.
//
// Basis ordering is ground-first: index 0 = |gg> = |HH>, 1 = |ge>, 2 = |eg>,
// 3 = |ee> = |VV>. The first label belongs to qubit one. Families written in
// the excited-first convention are converted at construction.

#pragma once

#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <string>

#include "esd/linalg.hpp"

namespace esd {

inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kPsdTolerance = -1e-10;

enum BasisIndex : std::size_t { kGG = 0, kGE = 1, kEG = 2, kEE = 3 };

/// Damping probability in [0, 1]; also used for p', p_n.
class DecayProbability {
public:
    constexpr DecayProbability() = default;
    explicit DecayProbability(double p) : p_(p) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("decay probability must lie in [0, 1]");
    }
    constexpr double value() const { return p_; }
    constexpr double survival() const { return 1.0 - p_; }

private:
    double p_ = 0.0;
};

/// Half-wave-plate angle in degrees, measured from |V>, within [0, 45].
class HwpAngle {
public:
    explicit HwpAngle(double degrees) : deg_(degrees) {
        if (!(degrees >= 0.0 && degrees <= 45.0)) throw DomainError("HWP angle must lie in [0, 45] degrees");
    }
    double degrees() const { return deg_; }
    double radians() const { return deg_ * std::numbers::pi / 180.0; }

private:
    double deg_;
};

/// p = sin^2(2 theta).
inline DecayProbability hwp_to_prob(HwpAngle theta) {
    const double s = std::sin(2.0 * theta.radians());
    return DecayProbability(std::min(1.0, s * s));
}

/// Hermitian, unit-trace, positive semidefinite 4x4 operator.
///
/// Instances are immutable. The validating factory rejects anything outside
/// the tolerances above; `trusted` is for outputs of operations that preserve
/// validity by construction (channels, unitaries) and only re-imposes exact
/// Hermitian symmetry.
class DensityMatrix4 {
public:
    static DensityMatrix4 from_matrix(const Matrix4& m);
    static DensityMatrix4 trusted(const Matrix4& m) { return DensityMatrix4(hermitize(m)); }

    const Matrix4& matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_[i][j]; }
    double population(std::size_t i) const { return m_[i][i].real(); }

private:
    explicit DensityMatrix4(const Matrix4& m) : m_(m) {}

    static Matrix4 hermitize(Matrix4 m) {
        for (std::size_t i = 0; i < 4; ++i) {
            m[i][i] = m[i][i].real();
            for (std::size_t j = i + 1; j < 4; ++j) {
                const Complex avg = 0.5 * (m[i][j] + std::conj(m[j][i]));
                m[i][j] = avg;
                m[j][i] = std::conj(avg);
            }
        }
        return m;
    }

    Matrix4 m_;
};

/// Outcome of `validate_density`.
struct DensityDiagnostics {
    bool finite = true;
    double hermiticity_defect = 0.0;
    double trace_defect = 0.0;
    double min_eigenvalue = 0.0;
    double purity = 0.0;

    bool hermitian() const { return hermiticity_defect <= kHermiticityTolerance; }
    bool unit_trace() const { return trace_defect <= kTraceTolerance; }
    bool positive() const { return min_eigenvalue >= kPsdTolerance; }
    bool passed() const { return finite && hermitian() && unit_trace() && positive(); }

    std::string summary() const {
        if (passed()) return "ok";
        if (!finite) return "non-finite entries";
        if (!hermitian()) return "not Hermitian (defect " + std::to_string(hermiticity_defect) + ")";
        if (!unit_trace()) return "trace defect " + std::to_string(trace_defect);
        return "not positive semidefinite (min eigenvalue " + std::to_string(min_eigenvalue) + ")";
    }
};

inline DensityDiagnostics validate_density(const Matrix4& m) {
    DensityDiagnostics d;
    d.finite = is_finite(m);
    if (!d.finite) return d;
    d.hermiticity_defect = hermiticity_defect(m);
    d.trace_defect = std::abs(trace(m) - Complex{1.0});
    d.purity = trace(m * m).real();
    if (d.hermiticity_defect <= kHermitianInputTolerance) {
        d.min_eigenvalue = eig_hermitian4(m).min();
    } else {
        d.min_eigenvalue = -std::numeric_limits<double>::infinity();
    }
    return d;
}

inline DensityDiagnostics validate_density(const DensityMatrix4& rho) { return validate_density(rho.matrix()); }

inline DensityMatrix4 DensityMatrix4::from_matrix(const Matrix4& m) {
    const auto diag = validate_density(m);
    if (!diag.passed()) throw DomainError("invalid density matrix: " + diag.summary());
    return DensityMatrix4(hermitize(m));
}

/// |psi> = |alpha| |gg> + |beta| e^{i delta} |ee>. The outer coherence is
/// rho(0,3) = |alpha||beta| e^{-i delta}.
inline DensityMatrix4 from_pure(double alpha_mag, double beta_mag, double delta) {
    if (!(alpha_mag >= 0.0 && beta_mag >= 0.0) || !std::isfinite(delta))
        throw DomainError("from_pure: magnitudes must be non-negative and the phase finite");
    if (std::abs(alpha_mag * alpha_mag + beta_mag * beta_mag - 1.0) > 1e-12)
        throw DomainError("from_pure: |alpha|^2 + |beta|^2 must equal 1");
    Matrix4 m{};
    m[kGG][kGG] = alpha_mag * alpha_mag;
    m[kEE][kEE] = beta_mag * beta_mag;
    m[kGG][kEE] = alpha_mag * beta_mag * std::polar(1.0, -delta);
    m[kEE][kGG] = std::conj(m[kGG][kEE]);
    return DensityMatrix4::trusted(m);
}

/// X-state with outer coherence, ground-first labels:
/// u = P(gg), x = P(ee), v = rho(gg, ee).
///
/// The excited-first four-population form maps onto this as
/// a -> x, d -> u, b -> b_pop at |eg>, c -> c_pop at |ge>, z -> conj(v).
struct OuterXParams {
    double u = 0.0;
    double x = 0.0;
    double b_pop = 0.0;
    double c_pop = 0.0;
    Complex v{};
};

/// Excited-first outer X-state: a = P(ee), b, c the middle populations in
/// reversed order, d = P(gg), z the corner coherence of that layout.
struct ExcitedFirstOuterParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    Complex z{};

    OuterXParams to_outer() const { return {d, a, b, c, std::conj(z)}; }
};

/// Excited-first X-state with inner coherence: a = P(ee), d = P(gg), and z
/// is the coherence between the two singly excited kets, stored at rho(ge, eg).
struct InnerXParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    Complex z{};
};

namespace detail {

inline void check_populations(std::initializer_list<double> pops, const char* what) {
    double sum = 0.0;
    for (double p : pops) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + ": populations must lie in [0, 1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw DomainError(std::string(what) + ": populations must sum to 1");
}

}  // namespace detail

inline DensityMatrix4 from_outer_x(const OuterXParams& params) {
    detail::check_populations({params.u, params.x, params.b_pop, params.c_pop}, "from_outer_x");
    if (std::abs(params.v) > std::sqrt(params.u * params.x) + 1e-12)
        throw DomainError("from_outer_x: |v| exceeds sqrt(u x), matrix would not be positive");
    Matrix4 m{};
    m[kGG][kGG] = params.u;
    m[kGE][kGE] = params.c_pop;
    m[kEG][kEG] = params.b_pop;
    m[kEE][kEE] = params.x;
    m[kGG][kEE] = params.v;
    m[kEE][kGG] = std::conj(params.v);
    return DensityMatrix4::from_matrix(m);
}

inline DensityMatrix4 from_outer_x(const ExcitedFirstOuterParams& params) { return from_outer_x(params.to_outer()); }

/// The excited-first layout is the ground-first one conjugated by a flip of
/// both qubits: a lands on |ee>, b on |eg>, c on |ge>, d on |gg>. Only the
/// populations are checked here.
inline Matrix4 inner_x_matrix(const InnerXParams& params) {
    detail::check_populations({params.a, params.b, params.c, params.d}, "inner_x_matrix");
    Matrix4 m{};
    m[kEE][kEE] = params.a;
    m[kEG][kEG] = params.b;
    m[kGE][kGE] = params.c;
    m[kGG][kGG] = params.d;
    m[kGE][kEG] = params.z;
    m[kEG][kGE] = std::conj(params.z);
    return m;
}

inline DensityMatrix4 from_inner_x(const InnerXParams& params) {
    const Matrix4 m = inner_x_matrix(params);
    if (std::abs(params.z) > std::sqrt(params.b * params.c) + 1e-12)
        throw DomainError("from_inner_x: |z| exceeds sqrt(b c), matrix would not be positive");
    return DensityMatrix4::from_matrix(m);
}

}  // namespace esd
