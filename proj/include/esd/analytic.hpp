// analytic.hpp
// Closed-form sudden-death points and NOT-timing boundaries.
//
// p0 is where negativity first vanishes without intervention. pA separates
// NOT times that hasten death (pn > pA) from those that delay it; pB
// separates delay from complete avoidance (pn <= pB). Values outside the
// physical window are reported as absent, not as errors.

#pragma once

#include <cmath>
#include <limits>
#include <optional>

#include "esd/core.hpp"
#include "esd/esd_finder.hpp"

namespace esd {

/// Outer X-state family with empty middle populations: u = P(gg),
/// x = P(ee), |v| the corner coherence magnitude.
struct MainFamily {
    double u = 0.0;
    double x = 0.0;
    double v_abs = 0.0;

    static MainFamily from_u(double u, double v_abs) { return {u, 1.0 - u, v_abs}; }
    static MainFamily pure(double u) { return {u, 1.0 - u, std::sqrt(u * (1.0 - u))}; }

    DensityMatrix4 state() const { return from_outer_x(OuterXParams{u, x, 0.0, 0.0, Complex{v_abs}}); }
};

/// A boundary value with its physical-domain tag. `raw` is NaN when the
/// formula is undefined (zero denominator).
struct Boundary {
    double raw = std::numeric_limits<double>::quiet_NaN();
    bool in_domain = false;

    bool defined() const { return std::isfinite(raw); }
    std::optional<double> value() const { return in_domain ? std::optional<double>(raw) : std::nullopt; }
};

enum class BoundarySource { Formula, Numeric };

struct BoundarySet {
    Boundary p0;
    Boundary pA_double;
    Boundary pB_double;
    Boundary pA_single;
    Boundary pB_single;
    BoundarySource source = BoundarySource::Formula;
};

namespace detail {

inline double safe_ratio(double num, double den) {
    if (den == 0.0 || !std::isfinite(num) || !std::isfinite(den)) return std::numeric_limits<double>::quiet_NaN();
    return num / den;
}

// p0 must lie in (0, 1]; the NOT boundaries in (0, p0).
inline BoundarySet filter_domain(BoundarySet s) {
    s.p0.in_domain = s.p0.defined() && s.p0.raw > 0.0 && s.p0.raw <= 1.0;
    for (Boundary* b : {&s.pA_double, &s.pB_double, &s.pA_single, &s.pB_single})
        b->in_domain = s.p0.in_domain && b->defined() && b->raw > 0.0 && b->raw < s.p0.raw;
    return s;
}

}  // namespace detail

/// Second-stage ESD point after a first stage at p:
/// p'0 = (|v| - x p) / (x (1 - p)). Absent outside [0, 1] or when p = 1.
inline std::optional<double> esd_pprime(const MainFamily& f, DecayProbability p) {
    if (p.value() >= 1.0 || f.x <= 0.0) return std::nullopt;
    const double r = (f.v_abs - f.x * p.value()) / (f.x * (1.0 - p.value()));
    if (!(r >= 0.0 && r <= 1.0)) return std::nullopt;
    return r;
}

/// Unclipped form of the above, for plotting and identities.
inline double esd_pprime_raw(const MainFamily& f, double p) {
    return detail::safe_ratio(f.v_abs - f.x * p, f.x * (1.0 - p));
}

/// Combined end point |v| / x; absent when x = 0 or the value exceeds 1.
inline std::optional<double> esd_pend(const MainFamily& f) {
    if (f.x <= 0.0) return std::nullopt;
    const double r = f.v_abs / f.x;
    if (r > 1.0) return std::nullopt;
    return r;
}

/// All NOT boundaries for the main family.
inline BoundarySet not_boundaries_main(const MainFamily& f) {
    const double u = f.u;
    const double v = f.v_abs;
    BoundarySet s;
    s.p0.raw = detail::safe_ratio(v, f.x);
    s.pA_double.raw = detail::safe_ratio(1.0 - 2.0 * u, 2.0 * (1.0 - u));
    s.pB_double.raw = detail::safe_ratio(v - u, 1.0 + v - u);
    s.pA_single.raw = detail::safe_ratio(v, u + 2.0 * v);
    s.pB_single.raw = detail::safe_ratio(v * v, v * v - u + 1.0);
    return detail::filter_domain(s);
}

enum class NotVariant { Double, Single };

/// p_end reached when the NOT is applied at p_n. Values at or above 1 mean
/// the state never reaches zero negativity before full decay.
struct PendAfterNot {
    double raw = 0.0;     ///< formula value; +inf for the single-NOT p_n = 0 limit
    double capped = 0.0;  ///< min(raw, 1)
    bool avoided = false;
};

inline PendAfterNot pend_after_not(DecayProbability pn_prob, const MainFamily& f, NotVariant variant) {
    const double pn = pn_prob.value();
    const double x = f.x;
    const double v = f.v_abs;
    double raw = 0.0;
    if (variant == NotVariant::Double) {
        raw = (pn * pn * (2.0 * x + v) + pn * (1.0 - 2.0 * x - 2.0 * v) + v) / (x * (pn * pn - 1.0) + 1.0);
    } else if (pn == 0.0 || x == 0.0) {
        // The formula diverges: the anti-correlated state decays only asymptotically.
        raw = std::numeric_limits<double>::infinity();
    } else {
        const double disc = 4.0 * x * (pn - 1.0) * pn + 4.0 * (pn - 1.0) * (pn - 1.0) * v * v + 1.0;
        raw = (std::sqrt(disc) + 2.0 * x * pn - 1.0) / (2.0 * x * pn);
    }
    PendAfterNot r;
    r.raw = raw;
    r.avoided = !(raw < 1.0);
    r.capped = r.avoided ? 1.0 : raw;
    return r;
}

/// Excited-first outer X-state formulas, as printed for that layout.
/// The single-NOT pA expression uses the p0 of the same parameter set.
inline BoundarySet boundaries_outer_x(const ExcitedFirstOuterParams& q) {
    const double a = q.a;
    const double b = q.b;
    const double c = q.c;
    const double d = q.d;
    const double z2 = std::norm(q.z);
    const double root = std::sqrt((b - c) * (b - c) + 4.0 * z2);

    BoundarySet s;
    s.p0.raw = detail::safe_ratio(-b - c + root, 2.0 * a);
    s.pA_double.raw = detail::safe_ratio(a - d, 1.0 + a - d);
    s.pB_double.raw = 1.0 - detail::safe_ratio(2.0 * a + b + c - root, 2.0 * ((a + b) * (a + c) - z2));
    s.pA_single.raw =
        1.0 - detail::safe_ratio((c + a) * ((c + a) * (1.0 - s.p0.raw) - 1.0), (a + b) * ((a + b) - root) - a);
    s.pB_single.raw = detail::safe_ratio(z2 - c, z2 + a);
    return detail::filter_domain(s);
}

inline BoundarySet boundaries_outer_x(const OuterXParams& p) {
    return boundaries_outer_x(ExcitedFirstOuterParams{p.x, p.b_pop, p.c_pop, p.u, std::conj(p.v)});
}

/// Inner-coherence X-state: printed formulas next to the numerically located
/// p0. The two disagree on at least one published example, so both are kept.
/// That example also violates |z| <= sqrt(b c); the report still evaluates
/// the matrix as given and records that it is not a state.
struct InnerBoundaryReport {
    BoundarySet formula;
    EsdResult numeric_p0;
    double numeric_p0_value = 0.0;  ///< 0 when the state is separable from the start, 1 when never
    bool discrepancy = false;
    bool state_positive = true;     ///< false when the inputs do not form a valid state
    double state_min_eigenvalue = 0.0;
    std::optional<double> published_p0;  ///< quoted value for the documented example, if this is it
};

inline constexpr double kInnerDiscrepancyTolerance = 1e-6;

inline BoundarySet inner_x_formulas(const InnerXParams& q) {
    const double a = q.a;
    const double b = q.b;
    const double c = q.c;
    const double d = q.d;
    const double z2 = std::norm(q.z);
    const double root = std::sqrt((b + c + 2.0 * a) * (b + c + 2.0 * a) - 4.0 * (a - z2));

    BoundarySet s;
    s.p0.raw = detail::safe_ratio(-b - c + root, 2.0 * a);
    s.pA_double.raw = detail::safe_ratio(a - d, 1.0 + a - d);
    s.pB_double.raw = detail::safe_ratio(2.0 * (a - z2) - (2.0 * a + b + c) + root, 2.0 * (a - z2));
    const double p0 = s.p0.raw;
    s.pA_single.raw = detail::safe_ratio((c + a) * (2.0 * a * (1.0 - p0) - (c + a) * (1.0 - p0) + c + d) - a,
                                         (c + a) * (2.0 * a * (1.0 - p0) - (b + a)) - a);
    s.pB_single.raw = 1.0 - detail::safe_ratio(a + c, (a + b) * (a + c) + z2);
    return detail::filter_domain(s);
}

inline InnerBoundaryReport boundaries_inner_x(const InnerXParams& q) {
    InnerBoundaryReport r;
    r.formula = inner_x_formulas(q);
    const Matrix4 m = inner_x_matrix(q);
    r.state_min_eigenvalue = eig_hermitian4(m).min();
    r.state_positive = r.state_min_eigenvalue >= kPsdTolerance;
    r.numeric_p0 = find_pend_numeric(DensityMatrix4::trusted(m), Scenario::none(), DecayProbability(0.0));
    r.numeric_p0_value = r.numeric_p0.p_prime;
    r.discrepancy = !r.formula.p0.defined() ||
                    std::abs(r.formula.p0.raw - r.numeric_p0_value) > kInnerDiscrepancyTolerance;
    const bool documented_example = std::abs(q.a - 0.4) < 1e-12 && std::abs(q.b - 0.2) < 1e-12 &&
                                    std::abs(q.c - 0.2) < 1e-12 && std::abs(std::abs(q.z) - 0.25) < 1e-12;
    if (documented_example) r.published_p0 = 0.125;
    return r;
}

}  // namespace esd
