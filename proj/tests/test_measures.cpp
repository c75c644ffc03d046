#include <gtest/gtest.h>

#include <algorithm>

#include "esd/measures.hpp"
#include "test_support.hpp"

namespace esd {
namespace {

using test::P;

TEST(EigHermitian4, Identity) {
    const auto s = eig_hermitian4(identity<4>());
    for (double e : s.eigenvalues) EXPECT_NEAR(e, 1.0, 1e-15);
}

TEST(EigHermitian4, DiagonalSortedAscending) {
    Matrix4 m{};
    m[0][0] = 0.3;
    m[1][1] = 0.1;
    m[2][2] = 0.4;
    m[3][3] = 0.2;
    const auto s = eig_hermitian4(m);
    EXPECT_DOUBLE_EQ(s.eigenvalues[0], 0.1);
    EXPECT_DOUBLE_EQ(s.eigenvalues[1], 0.2);
    EXPECT_DOUBLE_EQ(s.eigenvalues[2], 0.3);
    EXPECT_DOUBLE_EQ(s.eigenvalues[3], 0.4);
}

TEST(EigHermitian4, BellPartialTranspose) {
    const auto s = eig_hermitian4(partial_transpose(test::bell_state()));
    EXPECT_NEAR(s.eigenvalues[0], -0.5, 1e-14);
    for (int i = 1; i < 4; ++i) EXPECT_NEAR(s.eigenvalues[i], 0.5, 1e-14);
}

TEST(EigHermitian4, RejectsNonHermitianAndNonFinite) {
    Matrix4 m = identity<4>();
    m[0][2] = Complex{0.0, 1.0};
    EXPECT_THROW(eig_hermitian4(m), DomainError);
    Matrix4 n = identity<4>();
    n[1][1] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(eig_hermitian4(n), DomainError);
}

// Reconstruct A from the spectrum through invariants: trace, tr(A^2), tr(A^3), det.
TEST(EigHermitian4, SpectrumMatchesPowerTracesOnRandomMatrices) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        Matrix4 a{};
        for (std::size_t i = 0; i < 4; ++i) {
            a[i][i] = g(rng);
            for (std::size_t j = i + 1; j < 4; ++j) {
                a[i][j] = Complex{g(rng), g(rng)};
                a[j][i] = std::conj(a[i][j]);
            }
        }
        const auto s = eig_hermitian4(a);
        EXPECT_TRUE(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
        const double scale = frobenius_norm(a);
        Matrix4 power = identity<4>();
        for (int n = 1; n <= 3; ++n) {
            power = power * a;
            double sum = 0.0;
            for (double e : s.eigenvalues) sum += std::pow(e, n);
            EXPECT_NEAR(sum, trace(power).real(), 1e-12 * std::pow(scale, n) * 10.0);
        }
    }
}

TEST(EigXBlock, AgreesWithJacobiOnRandomXStates) {
    std::mt19937_64 rng(12);
    for (int k = 0; k < 1000; ++k) {
        const auto rho = test::random_outer_x(rng);
        for (auto which : {Subsystem::QubitOne, Subsystem::QubitTwo}) {
            const Matrix4 pt = partial_transpose(rho, which);
            const auto jac = eig_hermitian4(pt);
            const auto blk = eig_x_block(pt);
            for (int i = 0; i < 4; ++i) EXPECT_NEAR(jac.eigenvalues[i], blk.eigenvalues[i], 1e-12);
        }
        EXPECT_NEAR(negativity(rho), negativity_x_block(rho), 1e-12);
    }
}

TEST(EigXBlock, RejectsNonXMatrix) {
    Matrix4 m = scaled(identity<4>(), Complex{0.25});
    m[0][1] = 0.1;
    m[1][0] = 0.1;
    EXPECT_THROW(eig_x_block(m), DomainError);
}

TEST(PartialTranspose, DiagonalUnchanged) {
    Matrix4 m{};
    m[0][0] = 0.1;
    m[1][1] = 0.2;
    m[2][2] = 0.3;
    m[3][3] = 0.4;
    EXPECT_LT(max_abs_diff(partial_transpose(m), m), 1e-18);
    EXPECT_LT(max_abs_diff(partial_transpose(m, Subsystem::QubitOne), m), 1e-18);
}

TEST(PartialTranspose, OuterCoherenceMovesToInnerSlot) {
    const auto pt = partial_transpose(test::reference_state());
    EXPECT_NEAR(std::abs(pt[kGE][kEG] - Complex{0.4}), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(pt[kGG][kEE]), 0.0, 1e-15);
}

TEST(PartialTranspose, InvolutionAndTraceOnRandomStates) {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 100; ++k) {
        const auto rho = test::random_state(rng);
        for (auto which : {Subsystem::QubitOne, Subsystem::QubitTwo}) {
            const Matrix4 pt = partial_transpose(rho, which);
            EXPECT_LT(max_abs_diff(partial_transpose(pt, which), rho.matrix()), 1e-18);
            EXPECT_LT(hermiticity_defect(pt), 1e-15);
            EXPECT_NEAR(trace(pt).real(), 1.0, 1e-12);
        }
        // Full transpose shares the spectrum, so both sides agree.
        EXPECT_NEAR(negativity(rho, Subsystem::QubitOne), negativity(rho, Subsystem::QubitTwo), 1e-12);
    }
}

TEST(Negativity, ReferenceValues) {
    EXPECT_NEAR(negativity(DensityMatrix4::from_matrix(test::basis_projector(kGG))), 0.0, 1e-15);
    EXPECT_NEAR(negativity(test::bell_state()), 0.5, 1e-14);
    EXPECT_NEAR(negativity(test::reference_state()), 0.4, 1e-14);
    const auto rho = evolve_scenario(test::reference_state(), Scenario::none(), P(0.36), P(0.0));
    EXPECT_NEAR(negativity(rho), 0.256 - 0.18432, 1e-14);
}

TEST(Purity, ReferenceValues) {
    EXPECT_NEAR(purity(test::reference_state()), 1.0, 1e-15);
    EXPECT_NEAR(purity(DensityMatrix4::from_matrix(scaled(identity<4>(), Complex{0.25}))), 0.25, 1e-15);
    for (double t : {0.0, 0.3, 0.7, 1.0}) {
        EXPECT_NEAR(purity(evolve_scenario(test::reference_state(), Scenario::none(), P(1.0), P(t))), 1.0, 1e-12);
        EXPECT_NEAR(purity(evolve_scenario(test::reference_state(), Scenario::none(), P(t), P(1.0))), 1.0, 1e-12);
    }
    EXPECT_LT(purity(evolve_scenario(test::reference_state(), Scenario::none(), P(0.3), P(0.3))), 1.0 - 1e-3);
}

// Zero crossing of the damped family sits where rho22 rho33 = |rho14|^2.
TEST(Negativity, SignMatchesOuterCoherenceCriterion) {
    const auto rho0 = test::reference_state();
    int checked = 0;
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 60; ++j) {
            const auto rho = evolve_scenario(rho0, Scenario::none(), P(i / 60.0), P(j / 60.0));
            const double gap = std::norm(rho(kGG, kEE)) - rho(kGE, kGE).real() * rho(kEG, kEG).real();
            if (std::abs(gap) < 1e-12) continue;
            EXPECT_EQ(negativity(rho) > 1e-12, gap > 0.0) << i << "," << j;
            ++checked;
        }
    EXPECT_GT(checked, 3000);
}

// After a NOT on one qubit the criterion becomes rho11 rho44 = |rho23|^2.
TEST(Negativity, SignMatchesInnerCoherenceCriterionAfterSingleNot) {
    const auto rho0 = test::reference_state();
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 60; ++j) {
            const auto pn = P(i / 60.0);
            const auto rho = evolve_scenario(rho0, Scenario::single(pn), pn, P(j / 60.0));
            const double gap = std::norm(rho(kGE, kEG)) - rho(kGG, kGG).real() * rho(kEE, kEE).real();
            if (std::abs(gap) < 1e-12) continue;
            EXPECT_EQ(negativity(rho) > 1e-12, gap > 0.0) << i << "," << j;
        }
}

}  // namespace
}  // namespace esd
