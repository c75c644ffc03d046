// dilation.hpp
// System (x) reservoir picture of the interferometric damping setup. Each
// photon carries a polarization (H = ground, V = excited) and one of four
// spatial output modes {a, a', b, b'} that play the role of the reservoir.
// Tracing the modes out of the joint pure state recovers the Kraus result.

#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "esd/channels.hpp"

namespace esd::dilation {

enum class Polarization : std::size_t { H = 0, V = 1 };
enum class Mode : std::size_t { A = 0, APrime = 1, B = 2, BPrime = 3 };

inline constexpr std::size_t kModes = 4;
inline constexpr std::size_t kPhotonDim = 2 * kModes;
inline constexpr std::size_t kJointDim = kPhotonDim * kPhotonDim;

constexpr std::size_t photon_index(Polarization pol, Mode mode) {
    return static_cast<std::size_t>(pol) * kModes + static_cast<std::size_t>(mode);
}

/// Superposition over polarization (x) mode for one photon.
using PhotonState = std::array<Complex, kPhotonDim>;

struct JointPureState {
    std::array<Complex, kJointDim> amplitudes{};

    Complex operator()(Polarization p1, Mode m1, Polarization p2, Mode m2) const {
        return amplitudes[photon_index(p1, m1) * kPhotonDim + photon_index(p2, m2)];
    }
    double norm() const {
        double s = 0.0;
        for (const auto& a : amplitudes) s += std::norm(a);
        return std::sqrt(s);
    }
};

enum class OpticalElement {
    PbsSplit,      ///< P1: H counter-clockwise, V clockwise
    AdcHwp,        ///< H1 at theta
    NotHwp,        ///< H5 at 45 degrees
    ArmPbs,        ///< P2 segregates H and V amplitudes
    SecondaryAdc,  ///< H2 / H6 at theta', acting on the V arm only
    OutputMerge,   ///< path-compensated recombination of a' into a (P4)
};

enum class ProgramKind { Esd, DoubleNot };

/// Ordered element list for one photon's interferometer.
struct OpticalProgram {
    std::vector<OpticalElement> elements;

    static OpticalProgram esd() {
        using E = OpticalElement;
        return {{E::PbsSplit, E::AdcHwp, E::ArmPbs, E::SecondaryAdc, E::OutputMerge}};
    }
    static OpticalProgram double_not() {
        using E = OpticalElement;
        return {{E::PbsSplit, E::AdcHwp, E::NotHwp, E::ArmPbs, E::SecondaryAdc}};
    }

    /// Throws if the sequence is not one of the two known layouts.
    ProgramKind kind() const {
        if (elements == esd().elements) return ProgramKind::Esd;
        if (elements == double_not().elements) return ProgramKind::DoubleNot;
        throw DomainError("unknown optical program");
    }
};

/// Output of one photon's interferometer before the output merge.
///
/// Damping-only layout:
///   H -> |H,a>
///   V -> sqrt(1-p) sqrt(1-p') |V,a'> + sqrt(1-p) sqrt(p') |H,b'> + sqrt(p) |H,b>
/// NOT layout:
///   H -> sqrt(1-p') |V,b> + sqrt(p') |H,a>
///   V -> sqrt(1-p) |H,b> + sqrt(p) sqrt(1-p') |V,a'> + sqrt(p) sqrt(p') |H,b'>
inline PhotonState single_photon_map(Polarization pol, const OpticalProgram& program, DecayProbability p,
                                     DecayProbability p_second) {
    const double sp = std::sqrt(p.value());
    const double sq = std::sqrt(p.survival());
    const double spp = std::sqrt(p_second.value());
    const double sqq = std::sqrt(p_second.survival());
    using enum Polarization;
    using enum Mode;

    PhotonState out{};
    switch (program.kind()) {
        case ProgramKind::Esd:
            if (pol == H) {
                out[photon_index(H, A)] = 1.0;
            } else {
                out[photon_index(V, APrime)] = sq * sqq;
                out[photon_index(H, BPrime)] = sq * spp;
                out[photon_index(H, B)] = sp;
            }
            break;
        case ProgramKind::DoubleNot:
            if (pol == H) {
                out[photon_index(V, B)] = sqq;
                out[photon_index(H, A)] = spp;
            } else {
                out[photon_index(H, B)] = sq;
                out[photon_index(V, APrime)] = sp * sqq;
                out[photon_index(H, BPrime)] = sp * spp;
            }
            break;
    }
    return out;
}

/// Applies the program's output coupling. The damping-only layout merges
/// a' into a with compensated path lengths, so the undamped V amplitude
/// recombines coherently with the H amplitude.
inline PhotonState apply_output_coupler(const OpticalProgram& program, PhotonState s) {
    if (program.kind() != ProgramKind::Esd) return s;
    for (auto pol : {Polarization::H, Polarization::V}) {
        s[photon_index(pol, Mode::A)] += s[photon_index(pol, Mode::APrime)];
        s[photon_index(pol, Mode::APrime)] = 0.0;
    }
    return s;
}

using PhotonMap = PhotonState (*)(Polarization, const OpticalProgram&, DecayProbability, DecayProbability);

/// Programs for photon one and photon two under a scenario. A single NOT
/// puts the NOT layout on the target photon's arm only.
inline std::array<OpticalProgram, 2> programs_for(const Scenario& scenario) {
    switch (scenario.kind) {
        case ScenarioKind::NoNot: return {OpticalProgram::esd(), OpticalProgram::esd()};
        case ScenarioKind::DoubleNot: return {OpticalProgram::double_not(), OpticalProgram::double_not()};
        case ScenarioKind::SingleNot:
            if (scenario.single_target == NotTarget::QubitTwo)
                return {OpticalProgram::esd(), OpticalProgram::double_not()};
            return {OpticalProgram::double_not(), OpticalProgram::esd()};
    }
    throw DomainError("programs_for: unknown scenario");
}

/// Sends alpha|HH> + beta e^{i delta}|VV> through both interferometers.
/// `map` exists so tests can substitute a deliberately broken photon map.
inline JointPureState evolve_dilated(double alpha_mag, double beta_mag, double delta, const Scenario& scenario,
                                     DecayProbability p, DecayProbability p_second,
                                     PhotonMap map = &single_photon_map) {
    if (std::abs(alpha_mag * alpha_mag + beta_mag * beta_mag - 1.0) > 1e-12)
        throw DomainError("evolve_dilated: input amplitudes are not normalized");
    if (scenario.has_not() && std::abs(p.value() - scenario.p_n.value()) > kStageMatchTolerance)
        throw DomainError("evolve_dilated: first-stage probability must equal p_n");

    const auto programs = programs_for(scenario);
    auto run = [&](std::size_t photon, Polarization pol) {
        return apply_output_coupler(programs[photon], map(pol, programs[photon], p, p_second));
    };
    const std::array<Complex, 2> weights{Complex{alpha_mag}, beta_mag * std::polar(1.0, delta)};
    const std::array<Polarization, 2> pols{Polarization::H, Polarization::V};

    JointPureState out;
    for (std::size_t k = 0; k < 2; ++k) {
        const PhotonState first = run(0, pols[k]);
        const PhotonState second = run(1, pols[k]);
        for (std::size_t i = 0; i < kPhotonDim; ++i)
            for (std::size_t j = 0; j < kPhotonDim; ++j)
                out.amplitudes[i * kPhotonDim + j] += weights[k] * first[i] * second[j];
    }
    return out;
}

/// Reduced polarization state: sum over both photons' modes.
inline DensityMatrix4 trace_out_reservoir(const JointPureState& state) {
    Matrix4 rho{};
    for (std::size_t s1 = 0; s1 < 2; ++s1)
        for (std::size_t s2 = 0; s2 < 2; ++s2)
            for (std::size_t t1 = 0; t1 < 2; ++t1)
                for (std::size_t t2 = 0; t2 < 2; ++t2) {
                    Complex acc{};
                    for (std::size_t m1 = 0; m1 < kModes; ++m1)
                        for (std::size_t m2 = 0; m2 < kModes; ++m2) {
                            const auto row = (s1 * kModes + m1) * kPhotonDim + (s2 * kModes + m2);
                            const auto col = (t1 * kModes + m1) * kPhotonDim + (t2 * kModes + m2);
                            acc += state.amplitudes[row] * std::conj(state.amplitudes[col]);
                        }
                    rho[2 * s1 + s2][2 * t1 + t2] = acc;
                }
    return DensityMatrix4::trusted(rho);
}

}  // namespace esd::dilation
