// analysis.hpp
// Regime classification, negativity/purity surfaces and p_end curves.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "esd/analytic.hpp"
#include "esd/esd_finder.hpp"
#include "esd/measures.hpp"

namespace esd {

enum class Regime { Hasten, Delay, Avoid, AtBaseline };

inline constexpr std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::Hasten: return "hasten";
        case Regime::Delay: return "delay";
        case Regime::Avoid: return "avoid";
        case Regime::AtBaseline: return "baseline";
    }
    return "unknown";
}

inline constexpr double kRegimeTolerance = 1e-6;

/// Avoid iff the capped end point is 1; otherwise compare against p0.
inline Regime classify_pend(double p_end_capped, double p0, double tol = kRegimeTolerance) {
    if (p_end_capped >= 1.0) return Regime::Avoid;
    if (p_end_capped < p0 - tol) return Regime::Hasten;
    if (p_end_capped > p0 + tol) return Regime::Delay;
    return Regime::AtBaseline;
}

inline Scenario scenario_for(NotVariant variant, DecayProbability pn) {
    return variant == NotVariant::Double ? Scenario::both(pn) : Scenario::single(pn);
}

/// Regime of a NOT at p_n, from the numerically located end point. A NOT
/// applied once the state is already separable leaves the death point where
/// it was, which counts as baseline.
inline Regime classify_regime(DecayProbability pn, const MainFamily& f, NotVariant variant) {
    const double p0 = f.x > 0.0 ? f.v_abs / f.x : 1.0;
    const EsdResult r = find_pend_numeric(f.state(), scenario_for(variant, pn));
    if (r.outcome == EsdOutcome::BornSeparable) return Regime::AtBaseline;
    return classify_pend(r.avoided() ? 1.0 : r.p_end, p0);
}

struct RegimeSample {
    double pn = 0.0;
    double p_end_raw = 0.0;
    double p_end_capped = 0.0;
    Regime regime = Regime::AtBaseline;
};

struct RegimeReport {
    BoundarySet boundaries;
    double baseline = 0.0;
    std::vector<RegimeSample> samples;
};

struct SurfaceCell {
    double axis1 = 0.0;  ///< p, or p_n for NOT scenarios
    double axis2 = 0.0;  ///< p'
    double negativity = 0.0;
    double purity = 0.0;
};

struct SurfaceGrid {
    std::size_t resolution = 0;
    std::vector<SurfaceCell> cells;  ///< row-major, axis1 outer
};

inline double grid_point(std::size_t i, std::size_t n, double hi = 1.0) {
    if (i + 1 == n) return hi;
    return hi * static_cast<double>(i) / static_cast<double>(n - 1);
}

/// Negativity and purity on a uniform grid over [0,1]^2. For NOT scenarios
/// axis1 is the NOT point itself, so the scenario's own p_n is not used.
inline SurfaceGrid sweep_surface(const DensityMatrix4& rho0, const Scenario& scenario, std::size_t resolution) {
    if (resolution < 2) throw DomainError("sweep_surface: resolution must be at least 2");
    SurfaceGrid g;
    g.resolution = resolution;
    g.cells.resize(resolution * resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        const DecayProbability first(grid_point(i, resolution));
        const Scenario s = scenario.with_pn(first);
        const DensityMatrix4 mid = evolve_scenario(rho0, s, first, DecayProbability(0.0));
        for (std::size_t j = 0; j < resolution; ++j) {
            const DecayProbability second(grid_point(j, resolution));
            const DensityMatrix4 rho = apply_adc(mid, second);
            g.cells[i * resolution + j] = {first.value(), second.value(), negativity(rho), purity(rho)};
        }
    }
    return g;
}

struct PendCurvePoint {
    double pn = 0.0;
    PendAfterNot analytic;
    EsdResult numeric;
    Regime regime = Regime::AtBaseline;

    /// End point from the numerical oracle, capped at 1.
    double numeric_capped() const { return numeric.avoided() ? 1.0 : numeric.p_end; }
};

struct PendCurve {
    MainFamily family;
    NotVariant variant = NotVariant::Double;
    double p0 = 0.0;
    std::vector<PendCurvePoint> points;
    double max_abs_diff = 0.0;  ///< over points where both routes give a finite crossing
    std::size_t compared = 0;
    std::size_t status_mismatches = 0;  ///< avoided by one route, finite by the other
};

inline constexpr double kAvoidanceAmbiguity = 1e-9;

/// p_end against p_n on [0, p0]: closed form plus the numerical overlay.
inline PendCurve pend_curve(const MainFamily& f, NotVariant variant, std::size_t n_points) {
    if (n_points < 2) throw DomainError("pend_curve: need at least two points");
    const auto p0 = esd_pend(f);
    if (!p0) throw DomainError("pend_curve: state has no finite sudden-death point");

    PendCurve c;
    c.family = f;
    c.variant = variant;
    c.p0 = *p0;
    const DensityMatrix4 rho0 = f.state();
    c.points.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        PendCurvePoint pt;
        pt.pn = grid_point(i, n_points, c.p0);
        const DecayProbability pn(pt.pn);
        pt.analytic = pend_after_not(pn, f, variant);
        pt.numeric = find_pend_numeric(rho0, scenario_for(variant, pn));
        pt.regime = pt.numeric.outcome == EsdOutcome::BornSeparable ? Regime::AtBaseline
                                                                    : classify_pend(pt.numeric_capped(), c.p0);

        if (pt.numeric.crossing() && !pt.analytic.avoided) {
            c.max_abs_diff = std::max(c.max_abs_diff, std::abs(pt.analytic.raw - pt.numeric.p_end));
            ++c.compared;
        } else if (pt.numeric.crossing() != !pt.analytic.avoided &&
                   pt.numeric.outcome != EsdOutcome::BornSeparable &&
                   std::abs(pt.analytic.capped - pt.numeric_capped()) > kAvoidanceAmbiguity) {
            ++c.status_mismatches;
        }
        c.points.push_back(pt);
    }
    return c;
}

/// Samples of the regime along p_n in [0, p0], with the boundaries attached.
inline RegimeReport regime_report(const MainFamily& f, NotVariant variant, std::size_t n_points) {
    const PendCurve curve = pend_curve(f, variant, n_points);
    RegimeReport r;
    r.boundaries = not_boundaries_main(f);
    r.baseline = curve.p0;
    for (const auto& pt : curve.points)
        r.samples.push_back({pt.pn, pt.analytic.raw, pt.analytic.capped, pt.regime});
    return r;
}

}  // namespace esd
