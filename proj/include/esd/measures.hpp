// measures.hpp
// Partial transpose, negativity and purity.

#pragma once

#include "esd/core.hpp"

namespace esd {

enum class Subsystem { QubitOne, QubitTwo };

/// Transposes the chosen qubit's indices. Index i = 2*q1 + q2.
inline Matrix4 partial_transpose(const Matrix4& m, Subsystem which = Subsystem::QubitTwo) {
    Matrix4 r{};
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c)
                for (std::size_t d = 0; d < 2; ++d) {
                    const Complex e = m[2 * a + b][2 * c + d];
                    if (which == Subsystem::QubitTwo) r[2 * a + d][2 * c + b] = e;
                    else r[2 * c + b][2 * a + d] = e;
                }
    return r;
}

inline Matrix4 partial_transpose(const DensityMatrix4& rho, Subsystem which = Subsystem::QubitTwo) {
    return partial_transpose(rho.matrix(), which);
}

/// Smallest eigenvalue of the partial transpose. Negative exactly when the
/// state is entangled; its zero crossing marks sudden death.
inline double pt_min_eigenvalue(const DensityMatrix4& rho, Subsystem which = Subsystem::QubitTwo) {
    return eig_hermitian4(partial_transpose(rho, which)).min();
}

/// Sum of |negative eigenvalues| of the partial transpose.
inline double negativity(const DensityMatrix4& rho, Subsystem which = Subsystem::QubitTwo) {
    const auto spec = eig_hermitian4(partial_transpose(rho, which));
    double n = 0.0;
    for (double lambda : spec.eigenvalues)
        if (lambda < 0.0) n -= lambda;
    return n;
}

/// Same measure through the closed-form X-block spectrum.
inline double negativity_x_block(const DensityMatrix4& rho, Subsystem which = Subsystem::QubitTwo) {
    const auto spec = eig_x_block(partial_transpose(rho, which));
    double n = 0.0;
    for (double lambda : spec.eigenvalues)
        if (lambda < 0.0) n -= lambda;
    return n;
}

/// Tr(rho^2).
inline double purity(const DensityMatrix4& rho) {
    const auto& m = rho.matrix();
    double s = 0.0;
    for (const auto& row : m)
        for (const auto& e : row) s += std::norm(e);
    return s;
}

}  // namespace esd
