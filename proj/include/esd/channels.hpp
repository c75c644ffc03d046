// channels.hpp
// Amplitude damping Kraus operators, local NOT operations, and the three
// two-stage evolution pipelines (plain damping, NOT on both qubits, NOT on
// one qubit).

#pragma once

#include <array>
#include <cmath>
#include <utility>

#include "esd/core.hpp"

namespace esd {

using KrausOp2 = Matrix2;

/// Two-qubit Kraus set {M_i (x) M_j}, ordered M11, M12, M21, M22.
struct KrausSet4 {
    std::array<Matrix4, 4> ops{};

    /// max |sum M^dagger M - I|
    double completeness_defect() const {
        Matrix4 sum{};
        for (const auto& m : ops) sum = sum + adjoint(m) * m;
        return max_abs_diff(sum, identity<4>());
    }
};

/// M1 = diag(1, sqrt(1-p)); M2 carries sqrt(p) from |e> to |g>.
inline std::pair<KrausOp2, KrausOp2> adc_kraus_single(DecayProbability p) {
    KrausOp2 m1{};
    KrausOp2 m2{};
    m1[0][0] = 1.0;
    m1[1][1] = std::sqrt(p.survival());
    m2[0][1] = std::sqrt(p.value());
    return {m1, m2};
}

inline KrausSet4 adc_kraus_two(DecayProbability p) {
    const auto [m1, m2] = adc_kraus_single(p);
    return KrausSet4{{kron(m1, m1), kron(m1, m2), kron(m2, m1), kron(m2, m2)}};
}

inline DensityMatrix4 apply_channel(const DensityMatrix4& rho, const KrausSet4& ks) {
    Matrix4 out{};
    for (const auto& m : ks.ops) out = out + m * rho.matrix() * adjoint(m);
    return DensityMatrix4::trusted(out);
}

inline DensityMatrix4 apply_adc(const DensityMatrix4& rho, DecayProbability p) {
    return apply_channel(rho, adc_kraus_two(p));
}

enum class NotTarget { Both, QubitOne, QubitTwo };

inline Matrix4 not_unitary(NotTarget target) {
    constexpr Matrix2 sigma_x{{{0.0, 1.0}, {1.0, 0.0}}};
    constexpr Matrix2 id = identity<2>();
    switch (target) {
        case NotTarget::Both: return kron(sigma_x, sigma_x);
        case NotTarget::QubitOne: return kron(sigma_x, id);
        case NotTarget::QubitTwo: return kron(id, sigma_x);
    }
    throw DomainError("not_unitary: unknown target");
}

/// U rho U^dagger with U the sigma_x on the chosen qubit(s).
inline DensityMatrix4 apply_not(const DensityMatrix4& rho, NotTarget target) {
    const Matrix4 u = not_unitary(target);
    return DensityMatrix4::trusted(u * rho.matrix() * adjoint(u));
}

enum class ScenarioKind { NoNot, SingleNot, DoubleNot };

/// Which manipulation runs between the two damping stages, and at which
/// first-stage probability p_n.
struct Scenario {
    ScenarioKind kind = ScenarioKind::NoNot;
    NotTarget single_target = NotTarget::QubitOne;
    DecayProbability p_n{};

    static Scenario none() { return {}; }
    static Scenario single(DecayProbability pn, NotTarget target = NotTarget::QubitOne) {
        if (target == NotTarget::Both) throw DomainError("single-NOT scenario needs one target qubit");
        return {ScenarioKind::SingleNot, target, pn};
    }
    static Scenario both(DecayProbability pn) { return {ScenarioKind::DoubleNot, NotTarget::QubitOne, pn}; }

    Scenario with_pn(DecayProbability pn) const {
        Scenario s = *this;
        s.p_n = pn;
        return s;
    }
    bool has_not() const { return kind != ScenarioKind::NoNot; }
};

inline constexpr double kStageMatchTolerance = 1e-12;

/// First damping stage at p_first, the scenario's NOT (if any), then the
/// second damping stage at p_second. For NOT scenarios p_first must equal p_n.
inline DensityMatrix4 evolve_scenario(const DensityMatrix4& rho0, const Scenario& scenario, DecayProbability p_first,
                                      DecayProbability p_second) {
    if (scenario.has_not() && std::abs(p_first.value() - scenario.p_n.value()) > kStageMatchTolerance)
        throw DomainError("evolve_scenario: first-stage probability must equal the NOT point p_n");
    DensityMatrix4 rho = apply_adc(rho0, p_first);
    switch (scenario.kind) {
        case ScenarioKind::NoNot: break;
        case ScenarioKind::DoubleNot: rho = apply_not(rho, NotTarget::Both); break;
        case ScenarioKind::SingleNot: rho = apply_not(rho, scenario.single_target); break;
    }
    return apply_adc(rho, p_second);
}

/// Convenience overload for NOT scenarios: the first stage runs to p_n.
inline DensityMatrix4 evolve_scenario(const DensityMatrix4& rho0, const Scenario& scenario, DecayProbability p_second) {
    return evolve_scenario(rho0, scenario, scenario.p_n, p_second);
}

}  // namespace esd
