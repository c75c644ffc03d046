#include <gtest/gtest.h>

#include "esd/dilation.hpp"
#include "test_support.hpp"

namespace esd::dilation {
namespace {

using test::P;
using enum Polarization;
using enum Mode;

double norm_of(const PhotonState& s) {
    double n = 0.0;
    for (const auto& a : s) n += std::norm(a);
    return std::sqrt(n);
}

TEST(SinglePhotonMap, DampingLayoutHorizontalInput) {
    for (double p : {0.0, 0.3, 1.0})
        for (double pp : {0.0, 0.6, 1.0}) {
            const auto s = single_photon_map(H, OpticalProgram::esd(), P(p), P(pp));
            EXPECT_NEAR(std::abs(s[photon_index(H, A)] - Complex{1.0}), 0.0, 1e-15);
            EXPECT_NEAR(norm_of(s), 1.0, 1e-15);
        }
}

TEST(SinglePhotonMap, DampingLayoutVerticalInput) {
    const auto s = single_photon_map(V, OpticalProgram::esd(), P(0.36), P(0.0));
    EXPECT_NEAR(s[photon_index(V, APrime)].real(), 0.8, 1e-15);
    EXPECT_NEAR(s[photon_index(H, B)].real(), 0.6, 1e-15);
    EXPECT_NEAR(std::abs(s[photon_index(H, BPrime)]), 0.0, 1e-15);
}

TEST(SinglePhotonMap, NotLayoutHorizontalInput) {
    const auto s = single_photon_map(H, OpticalProgram::double_not(), P(0.4), P(0.0));
    EXPECT_NEAR(s[photon_index(V, B)].real(), 1.0, 1e-15);
    EXPECT_NEAR(norm_of(s), 1.0, 1e-15);
}

TEST(SinglePhotonMap, NormPreservedEverywhere) {
    for (auto prog : {OpticalProgram::esd(), OpticalProgram::double_not()})
        for (auto pol : {H, V})
            for (int i = 0; i <= 10; ++i)
                for (int j = 0; j <= 10; ++j)
                    EXPECT_NEAR(norm_of(single_photon_map(pol, prog, P(i / 10.0), P(j / 10.0))), 1.0, 1e-15);
}

TEST(SinglePhotonMap, UnknownProgramRejected) {
    OpticalProgram bogus{{OpticalElement::PbsSplit, OpticalElement::NotHwp}};
    EXPECT_THROW(single_photon_map(H, bogus, P(0.1), P(0.1)), DomainError);
}

TEST(EvolveDilated, NoDampingReconstructsInput) {
    const double a = 1.0 / std::sqrt(5.0);
    const double b = 2.0 / std::sqrt(5.0);
    const auto out = evolve_dilated(a, b, 0.4, Scenario::none(), P(0.0), P(0.0));
    EXPECT_NEAR(std::abs(out(H, A, H, A) - Complex{a}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out(V, A, V, A) - b * std::polar(1.0, 0.4)), 0.0, 1e-15);
    EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(EvolveDilated, NotWithoutDampingSwapsPolarizations) {
    const double a = 1.0 / std::sqrt(5.0);
    const double b = 2.0 / std::sqrt(5.0);
    const auto out = evolve_dilated(a, b, 0.0, Scenario::both(P(0.0)), P(0.0), P(0.0));
    EXPECT_NEAR(std::abs(out(V, B, V, B) - Complex{a}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out(H, B, H, B) - Complex{b}), 0.0, 1e-15);
}

TEST(EvolveDilated, FullDecayLeavesOnlyHorizontal) {
    const auto out = evolve_dilated(1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0), 0.0, Scenario::none(), P(1.0), P(0.3));
    for (std::size_t i = 0; i < kPhotonDim; ++i)
        for (std::size_t j = 0; j < kPhotonDim; ++j)
            if (i >= kModes || j >= kModes) EXPECT_NEAR(std::abs(out.amplitudes[i * kPhotonDim + j]), 0.0, 1e-15);
}

TEST(EvolveDilated, RejectsBadInput) {
    EXPECT_THROW(evolve_dilated(0.5, 0.5, 0.0, Scenario::none(), P(0.1), P(0.1)), DomainError);
    EXPECT_THROW(evolve_dilated(1.0, 0.0, 0.0, Scenario::both(P(0.2)), P(0.1), P(0.1)), DomainError);
}

TEST(TraceOutReservoir, ProductStateGivesRankOne) {
    JointPureState s;
    s.amplitudes[photon_index(H, B) * kPhotonDim + photon_index(V, BPrime)] = 1.0;
    const auto rho = trace_out_reservoir(s);
    EXPECT_NEAR(purity(rho), 1.0, 1e-15);
    EXPECT_NEAR(rho(kGE, kGE).real(), 1.0, 1e-15);
}

TEST(TraceOutReservoir, MatchesKrausAtReferencePoint) {
    const double a = 1.0 / std::sqrt(5.0);
    const double b = 2.0 / std::sqrt(5.0);
    const auto reduced = trace_out_reservoir(evolve_dilated(a, b, 0.0, Scenario::none(), P(0.36), P(0.0)));
    const auto kraus = evolve_scenario(test::reference_state(), Scenario::none(), P(0.36), P(0.0));
    EXPECT_LE(max_abs_diff(reduced.matrix(), kraus.matrix()), 1e-12);
}

TEST(TraceOutReservoir, EquivalentToKrausOnFineGrid) {
    const std::array<std::array<double, 3>, 4> inputs{{{1.0 / std::sqrt(5.0), 2.0 / std::sqrt(5.0), 0.0},
                                                       {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.1},
                                                       {std::sqrt(0.9), std::sqrt(0.1), -2.0},
                                                       {0.0, 1.0, 0.0}}};
    const std::array<Scenario, 4> kinds{Scenario::none(), Scenario::both(P(0.0)), Scenario::single(P(0.0)),
                                        Scenario::single(P(0.0), NotTarget::QubitTwo)};
    double worst = 0.0;
    for (const auto& in : inputs) {
        const auto rho0 = from_pure(in[0], in[1], in[2]);
        for (const auto& kind : kinds)
            for (int i = 0; i <= 10; ++i)
                for (int j = 0; j <= 10; ++j) {
                    const auto p = P(i / 10.0);
                    const auto pp = P(j / 10.0);
                    const auto s = kind.with_pn(p);
                    const auto joint = evolve_dilated(in[0], in[1], in[2], s, p, pp);
                    EXPECT_NEAR(joint.norm(), 1.0, 1e-12);
                    worst = std::max(worst, max_abs_diff(trace_out_reservoir(joint).matrix(),
                                                         evolve_scenario(rho0, s, p, pp).matrix()));
                }
    }
    EXPECT_LE(worst, 1e-12);
}

// Without recombining a' into a, the undamped branch loses its coherence
// with |H,a> and the reduced state is no longer the damped state.
TEST(TraceOutReservoir, DistinguishableOutputModesBreakEquivalence) {
    const double a = 1.0 / std::sqrt(5.0);
    const double b = 2.0 / std::sqrt(5.0);
    const auto programs = programs_for(Scenario::none());
    JointPureState joint;
    const std::array<Complex, 2> w{Complex{a}, Complex{b}};
    const std::array<Polarization, 2> pols{H, V};
    for (std::size_t k = 0; k < 2; ++k) {
        const auto s1 = single_photon_map(pols[k], programs[0], P(0.3), P(0.2));
        const auto s2 = single_photon_map(pols[k], programs[1], P(0.3), P(0.2));
        for (std::size_t i = 0; i < kPhotonDim; ++i)
            for (std::size_t j = 0; j < kPhotonDim; ++j) joint.amplitudes[i * kPhotonDim + j] += w[k] * s1[i] * s2[j];
    }
    const auto kraus = evolve_scenario(test::reference_state(), Scenario::none(), P(0.3), P(0.2));
    EXPECT_GT(max_abs_diff(trace_out_reservoir(joint).matrix(), kraus.matrix()), 0.1);
}

}  // namespace
}  // namespace esd::dilation
