// esd_finder.hpp
// Numerical location of entanglement sudden death along the second damping
// stage of a pipeline. Independent of every closed-form boundary formula.

#pragma once

#include <string_view>
#include <vector>

#include "esd/channels.hpp"
#include "esd/measures.hpp"

namespace esd {

inline constexpr double kNegativityZero = 1e-12;
inline constexpr double kAvoidanceProbe = 1.0 - 1e-12;
inline constexpr int kFallbackScanPoints = 10000;

enum class EsdOutcome {
    Crossing,       ///< negativity reaches zero at a finite p' < 1
    Avoided,        ///< entanglement survives for every p' < 1
    BornSeparable,  ///< already separable when the second stage starts
};

inline constexpr std::string_view to_string(EsdOutcome o) {
    switch (o) {
        case EsdOutcome::Crossing: return "crossing";
        case EsdOutcome::Avoided: return "avoided";
        case EsdOutcome::BornSeparable: return "born_separable";
    }
    return "unknown";
}

struct EsdResult {
    EsdOutcome outcome = EsdOutcome::Crossing;
    double p_prime = 0.0;  ///< second-stage ESD point (1 when avoided, 0 when born separable)
    double p_end = 0.0;    ///< combined point 1 - (1 - p_first)(1 - p_prime)
    bool used_scan = false;
    std::vector<double> sign_changes;  ///< filled only by the fallback scan

    bool avoided() const { return outcome == EsdOutcome::Avoided; }
    bool crossing() const { return outcome == EsdOutcome::Crossing; }
};

namespace detail {

// Signed witness along the second stage: negative while entangled.
class SecondStageWitness {
public:
    SecondStageWitness(const DensityMatrix4& rho0, const Scenario& scenario, DecayProbability p_first)
        : mid_(evolve_scenario(rho0, scenario, p_first, DecayProbability(0.0))) {}

    double operator()(double p_prime) const {
        return pt_min_eigenvalue(apply_adc(mid_, DecayProbability(p_prime)));
    }
    double negativity_at(double p_prime) const { return negativity(apply_adc(mid_, DecayProbability(p_prime))); }

private:
    DensityMatrix4 mid_;
};

// Shrinks [lo, hi] around the point where `same_as_lo` flips, until the
// bracket cannot shrink further. Returns the first point past the flip.
template <typename Pred>
double bisect_flip(const Pred& same_as_lo, double lo, double hi) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (same_as_lo(mid)) lo = mid;
        else hi = mid;
    }
    return hi;
}

}  // namespace detail

/// Smallest p' at which the state leaves the entangled set.
///
/// The search brackets [0, 1 - 1e-12] and bisects the sign of the smallest
/// partial-transpose eigenvalue. When the endpoints do not bracket a crossing
/// a 10^4-point scan looks for re-entrant intervals before the result is
/// declared avoided.
inline EsdResult find_pend_numeric(const DensityMatrix4& rho0, const Scenario& scenario, DecayProbability p_first) {
    const detail::SecondStageWitness w(rho0, scenario, p_first);
    const double survival_first = p_first.survival();
    auto combine = [&](double pp) { return 1.0 - survival_first * (1.0 - pp); };

    EsdResult r;
    if (w.negativity_at(0.0) <= kNegativityZero) {
        r.outcome = EsdOutcome::BornSeparable;
        r.p_prime = 0.0;
        r.p_end = p_first.value();
        return r;
    }

    auto entangled = [&](double pp) { return w(pp) < 0.0; };
    if (!entangled(kAvoidanceProbe)) {
        r.outcome = EsdOutcome::Crossing;
        r.p_prime = detail::bisect_flip(entangled, 0.0, kAvoidanceProbe);
        r.p_end = combine(r.p_prime);
        return r;
    }

    // Both ends entangled: only a non-monotone witness could still cross.
    r.used_scan = true;
    double prev_p = 0.0;
    bool prev_state = true;
    for (int i = 1; i <= kFallbackScanPoints; ++i) {
        const double p = kAvoidanceProbe * static_cast<double>(i) / kFallbackScanPoints;
        const bool state = entangled(p);
        if (state != prev_state)
            r.sign_changes.push_back(
                detail::bisect_flip([&](double q) { return entangled(q) == prev_state; }, prev_p, p));
        prev_state = state;
        prev_p = p;
    }
    if (r.sign_changes.empty()) {
        r.outcome = EsdOutcome::Avoided;
        r.p_prime = 1.0;
        r.p_end = 1.0;
    } else {
        r.outcome = EsdOutcome::Crossing;
        r.p_prime = r.sign_changes.front();
        r.p_end = combine(r.p_prime);
    }
    return r;
}

/// NOT scenarios run the first stage to p_n.
inline EsdResult find_pend_numeric(const DensityMatrix4& rho0, const Scenario& scenario) {
    return find_pend_numeric(rho0, scenario, scenario.has_not() ? scenario.p_n : DecayProbability(0.0));
}

}  // namespace esd
