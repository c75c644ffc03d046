// closed_form.hpp
// Entry-by-entry closed forms of the evolved outer X-state (u, x, v) under
// the three pipelines. These are independent of the Kraus machinery and
// serve as a second route to the same matrices.

#pragma once

#include "esd/core.hpp"

namespace esd::closed_form {

/// Plain two-stage damping (p, then p').
inline Matrix4 no_not(double u, double x, Complex v, double p, double pp) {
    const double q = 1.0 - p;
    const double qq = 1.0 - pp;
    Matrix4 m{};
    m[0][0] = u + p * p * x + pp * pp * q * q * x + 2.0 * pp * q * p * x;
    m[1][1] = qq * pp * q * q * x + qq * q * p * x;
    m[2][2] = qq * pp * q * q * x + qq * q * p * x;
    m[3][3] = qq * qq * q * q * x;
    m[0][3] = qq * q * v;
    m[3][0] = qq * q * std::conj(v);
    return m;
}

/// NOT on both qubits at p_n, then damping p'.
inline Matrix4 double_not(double u, double x, Complex v, double pn, double pp) {
    const double qn = 1.0 - pn;
    const double qq = 1.0 - pp;
    const double lifted = u + pn * pn * x;
    Matrix4 m{};
    m[0][0] = qn * qn * x + 2.0 * pp * qn * pn * x + pp * pp * lifted;
    m[1][1] = qq * qn * pn * x + qq * pp * lifted;
    m[2][2] = qq * qn * pn * x + qq * pp * lifted;
    m[3][3] = qq * qq * lifted;
    m[0][3] = qq * qn * std::conj(v);
    m[3][0] = qq * qn * v;
    return m;
}

/// NOT on qubit one at p_n, then damping p'. The coherence moves to the
/// inner anti-diagonal.
inline Matrix4 single_not(double u, double x, Complex v, double pn, double pp) {
    const double qn = 1.0 - pn;
    const double qq = 1.0 - pp;
    const double lifted = u + pn * pn * x;
    Matrix4 m{};
    m[0][0] = pp * qn * qn * x + qn * pn * x + pp * pp * qn * pn * x + pp * lifted;
    m[1][1] = qq * qn * qn * x + qq * pp * qn * pn * x;
    m[2][2] = qq * pp * qn * pn * x + qq * lifted;
    m[3][3] = qq * qq * qn * pn * x;
    m[1][2] = qq * qn * std::conj(v);
    m[2][1] = qq * qn * v;
    return m;
}

}  // namespace esd::closed_form
