#include <gtest/gtest.h>

#include <numbers>

#include "esd/core.hpp"
#include "test_support.hpp"

namespace esd {
namespace {

using test::P;

TEST(HwpToProb, KnownAngles) {
    EXPECT_DOUBLE_EQ(hwp_to_prob(HwpAngle(0.0)).value(), 0.0);
    EXPECT_NEAR(hwp_to_prob(HwpAngle(45.0)).value(), 1.0, 1e-15);
    EXPECT_NEAR(hwp_to_prob(HwpAngle(22.5)).value(), 0.5, 1e-15);
}

TEST(HwpToProb, StrictlyIncreasingInsideRange) {
    double prev = hwp_to_prob(HwpAngle(0.0)).value();
    for (int i = 1; i <= 450; ++i) {
        const double p = hwp_to_prob(HwpAngle(i * 0.1)).value();
        if (i < 450) EXPECT_GT(p, prev) << "theta " << i * 0.1;
        prev = p;
    }
}

TEST(HwpToProb, RejectsOutOfRange) {
    EXPECT_THROW(HwpAngle(-0.1), DomainError);
    EXPECT_THROW(HwpAngle(45.01), DomainError);
    EXPECT_THROW(HwpAngle(std::nan("")), DomainError);
}

TEST(DecayProbabilityType, RejectsOutOfRange) {
    EXPECT_THROW(DecayProbability(-1e-9), DomainError);
    EXPECT_THROW(DecayProbability(1.0 + 1e-9), DomainError);
    EXPECT_THROW(DecayProbability(std::nan("")), DomainError);
    EXPECT_DOUBLE_EQ(DecayProbability(0.3).survival(), 0.7);
}

TEST(FromPure, ReferenceState) {
    const auto rho = test::reference_state();
    EXPECT_NEAR(rho(kGG, kGG).real(), 0.2, 1e-15);
    EXPECT_NEAR(rho(kEE, kEE).real(), 0.8, 1e-15);
    EXPECT_NEAR(std::abs(rho(kGG, kEE) - Complex{0.4}), 0.0, 1e-15);
    EXPECT_TRUE(validate_density(rho).passed());
    EXPECT_NEAR(validate_density(rho).purity, 1.0, 1e-12);
}

TEST(FromPure, ProductState) {
    const auto rho = from_pure(1.0, 0.0, 1.234);
    EXPECT_LT(max_abs_diff(rho.matrix(), test::basis_projector(kGG)), 1e-15);
}

TEST(FromPure, PhaseConventionBraCarriesConjugate) {
    const auto rho = from_pure(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), std::numbers::pi / 2.0);
    EXPECT_NEAR(std::abs(rho(kGG, kEE) - Complex{0.0, -0.5}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(rho(kEE, kGG) - Complex{0.0, 0.5}), 0.0, 1e-15);
}

TEST(FromPure, RejectsUnnormalizedInput) {
    EXPECT_THROW(from_pure(0.5, 0.5, 0.0), DomainError);
    EXPECT_THROW(from_pure(-0.6, 0.8, 0.0), DomainError);
}

TEST(FromPure, PurityAndNegativityOverPhases) {
    for (int k = 0; k <= 10; ++k) {
        const double a2 = k / 10.0;
        const double alpha = std::sqrt(a2);
        const double beta = std::sqrt(1.0 - a2);
        const auto rho = from_pure(alpha, beta, 0.37 * k);
        EXPECT_NEAR(purity(rho), 1.0, 1e-12);
        EXPECT_NEAR(negativity(rho), alpha * beta, 1e-12);
    }
}

TEST(FromOuterX, MatchesPureConstructor) {
    const auto a = from_outer_x(OuterXParams{0.2, 0.8, 0.0, 0.0, Complex{0.4}});
    EXPECT_LT(max_abs_diff(a.matrix(), test::reference_state().matrix()), 1e-15);
}

TEST(FromOuterX, MixedStateIsValid) {
    const auto rho = from_outer_x(OuterXParams{0.2, 0.6, 0.1, 0.1, Complex{0.3}});
    const auto d = validate_density(rho);
    EXPECT_TRUE(d.passed()) << d.summary();
    EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-15);
}

TEST(FromOuterX, RejectsNonPositive) {
    EXPECT_THROW(from_outer_x(OuterXParams{0.5, 0.5, 0.0, 0.0, Complex{0.6}}), DomainError);
    EXPECT_THROW(from_outer_x(OuterXParams{0.5, 0.6, 0.0, 0.0, Complex{0.1}}), DomainError);
    EXPECT_THROW(from_outer_x(OuterXParams{-0.1, 0.9, 0.1, 0.1, Complex{0.0}}), DomainError);
}

TEST(FromOuterX, ExcitedFirstLabelsLandOnCanonicalSlots) {
    const ExcitedFirstOuterParams q{0.6, 0.1, 0.05, 0.25, Complex{0.3, 0.1}};
    const auto rho = from_outer_x(q);
    EXPECT_NEAR(rho(kEE, kEE).real(), 0.6, 1e-15);
    EXPECT_NEAR(rho(kEG, kEG).real(), 0.1, 1e-15);
    EXPECT_NEAR(rho(kGE, kGE).real(), 0.05, 1e-15);
    EXPECT_NEAR(rho(kGG, kGG).real(), 0.25, 1e-15);
    EXPECT_NEAR(std::abs(rho(kEE, kGG) - q.z), 0.0, 1e-15);
}

TEST(FromInnerX, MaximallyEntangledInnerState) {
    const auto rho = from_inner_x(InnerXParams{0.0, 0.5, 0.5, 0.0, Complex{0.5}});
    EXPECT_NEAR(negativity(rho), 0.5, 1e-12);
    EXPECT_NEAR(std::abs(rho(kGE, kEG) - Complex{0.5}), 0.0, 1e-15);
}

TEST(FromInnerX, ProductState) {
    const auto rho = from_inner_x(InnerXParams{1.0, 0.0, 0.0, 0.0, Complex{}});
    EXPECT_LT(max_abs_diff(rho.matrix(), test::basis_projector(kEE)), 1e-15);
}

// The documented parameter set has |z| = 0.25 > sqrt(bc) = 0.2.
TEST(FromInnerX, DocumentedExampleIsNotPositive) {
    const InnerXParams q{0.4, 0.2, 0.2, 0.2, Complex{0.25}};
    EXPECT_THROW(from_inner_x(q), DomainError);
    const auto d = validate_density(inner_x_matrix(q));
    EXPECT_FALSE(d.positive());
    EXPECT_NEAR(d.min_eigenvalue, -0.05, 1e-12);
}

TEST(ValidateDensity, MaximallyMixed) {
    const auto d = validate_density(scaled(identity<4>(), Complex{0.25}));
    EXPECT_TRUE(d.passed());
    EXPECT_NEAR(d.min_eigenvalue, 0.25, 1e-14);
    EXPECT_NEAR(d.purity, 0.25, 1e-14);
}

TEST(ValidateDensity, FlagsEachDefect) {
    Matrix4 m{};
    m[0][0] = 0.5;
    m[3][3] = 0.5;
    m[0][3] = 0.9;
    m[3][0] = 0.9;
    auto d = validate_density(m);
    EXPECT_FALSE(d.passed());
    EXPECT_FALSE(d.positive());
    EXPECT_NEAR(d.min_eigenvalue, -0.4, 1e-12);

    Matrix4 skew = scaled(identity<4>(), Complex{0.25});
    skew[0][1] = 0.1;
    EXPECT_FALSE(validate_density(skew).hermitian());

    EXPECT_FALSE(validate_density(scaled(identity<4>(), Complex{0.3})).unit_trace());

    Matrix4 bad = scaled(identity<4>(), Complex{0.25});
    bad[2][2] = std::nan("");
    EXPECT_FALSE(validate_density(bad).passed());
    EXPECT_THROW(DensityMatrix4::from_matrix(bad), DomainError);
}

TEST(ValidateDensity, EveryConstructorOutputPasses) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        EXPECT_TRUE(validate_density(test::random_outer_x(rng)).passed());
        EXPECT_TRUE(validate_density(test::random_state(rng)).passed());
    }
}

}  // namespace
}  // namespace esd
