#include <gtest/gtest.h>

#include <random>

#include "ptthermo/bistate.hpp"
#include "ptthermo/error.hpp"
#include "test_support.hpp"

using namespace ptthermo;
using testing_support::params;
using testing_support::r_grid;

namespace {

EnergyEigensystem esys_at(double r)
{
    return energy_eigensystem(build_pt_hamiltonian(params(r)));
}

} // namespace

TEST(Bistate, ClosedFormMatchesProjectorSum)
{
    std::mt19937_64 rng(11);
    for (double r : r_grid()) {
        const EnergyEigensystem e = esys_at(r);
        for (int trial = 0; trial < 200; ++trial) {
            const CoefficientMatrix c = testing_support::random_coefficients(rng);
            const CMatrix a = rho_g_projector_sum(c, e);
            EXPECT_LT(max_abs(rho_g_closed_form(c, e.params) - a), 1e-12) << r;
            EXPECT_NEAR(std::abs(a.trace() - 1.0), 0.0, 1e-10);
        }
    }
}

TEST(Bistate, LambdaClosedFormMatchesNumeric)
{
    std::mt19937_64 rng(12);
    for (double r : r_grid()) {
        const EnergyEigensystem e = esys_at(r);
        for (int trial = 0; trial < 200; ++trial) {
            const GeneralizedDensityMatrix g = build_rho_g(testing_support::random_coefficients(rng), e);
            const LambdaPair closed = lambda_closed_form(g.coeffs, e.params);
            const LambdaPair numeric = lambda_numeric(g.matrix);
            EXPECT_NEAR(closed.plus, numeric.plus, 1e-10);
            EXPECT_NEAR(closed.minus, numeric.minus, 1e-10);
            EXPECT_GE(closed.plus, closed.minus);
        }
    }
}

TEST(Bistate, SpectrumEqualsCoefficientSpectrum)
{
    // rho_G = V C V^{-1}, so its eigenvalues are those of C
    std::mt19937_64 rng(13);
    const EnergyEigensystem e = esys_at(0.8);
    for (int trial = 0; trial < 50; ++trial) {
        const CoefficientMatrix c = testing_support::random_coefficients(rng);
        Eigen::SelfAdjointEigenSolver<CMatrix> es(c.as_matrix());
        const LambdaPair l = lambda_eigenvalues(build_rho_g(c, e));
        EXPECT_NEAR(l.plus, es.eigenvalues()(1), 1e-10);
        EXPECT_NEAR(l.minus, es.eigenvalues()(0), 1e-10);
    }
}

TEST(Bistate, InitialStates)
{
    const EnergyEigensystem e = esys_at(0.5);
    const auto ground = initial_state(InitialState::Ground, e);
    EXPECT_LT(max_abs(ground.matrix - e.ket_Eminus * e.dual_Eminus.adjoint()), 1e-15);
    const auto excited = initial_state(InitialState::Excited, e);
    EXPECT_LT(max_abs(excited.matrix - e.ket_Eplus * e.dual_Eplus.adjoint()), 1e-15);

    // intermediate is pure: (sqrt3/2)|E-> + (1/2)|E+>
    const auto mid = initial_state(InitialState::Intermediate, e);
    const CVector psi = std::sqrt(3.0) / 2 * e.ket_Eminus + 0.5 * e.ket_Eplus;
    const CVector dual = std::sqrt(3.0) / 2 * e.dual_Eminus + 0.5 * e.dual_Eplus;
    EXPECT_LT(max_abs(mid.matrix - psi * dual.adjoint()), 1e-14);
    const LambdaPair l = lambda_eigenvalues(mid);
    EXPECT_NEAR(l.plus, 1.0, 1e-10);
    EXPECT_NEAR(l.minus, 0.0, 1e-10);
}

TEST(Bistate, GeneralizedExpectationOfEnergy)
{
    const PTHamiltonian h = build_pt_hamiltonian(params(0.6));
    const EnergyEigensystem e = energy_eigensystem(h);
    const cplx up = generalized_expectation(h.matrix, initial_state(InitialState::Excited, e));
    EXPECT_NEAR(up.real(), e.energy_abs, 1e-14);
    EXPECT_NEAR(up.imag(), 0.0, 1e-14);
    const cplx mid = generalized_expectation(h.matrix, initial_state(InitialState::Intermediate, e));
    EXPECT_NEAR(mid.real(), (0.25 - 0.75) * e.energy_abs, 1e-14);
}

TEST(Bistate, ProjectionRoundTrip)
{
    std::mt19937_64 rng(14);
    const EnergyEigensystem e = esys_at(0.9);
    const CoefficientMatrix c = testing_support::random_coefficients(rng);
    const CoefficientMatrix back = project_coefficients(rho_g_projector_sum(c, e), e);
    EXPECT_LT(max_abs(back.as_matrix() - c.as_matrix()), 1e-13);
    const GeneralizedDensityMatrix g = from_evolved(rho_g_projector_sum(c, e), e);
    EXPECT_LT(max_abs(g.coeffs.as_matrix() - c.as_matrix()), 1e-13);
}

TEST(Bistate, PassiveStatePutsLargerWeightOnGround)
{
    const EnergyEigensystem e = esys_at(0.3);
    const auto p = passive_state(LambdaPair{0.8, 0.2}, e);
    EXPECT_DOUBLE_EQ(p.coeffs.c11.real(), 0.8);
    EXPECT_DOUBLE_EQ(p.coeffs.c22.real(), 0.2);
    const auto q = passive_state(LambdaPair{0.2, 0.8}, e);
    EXPECT_DOUBLE_EQ(q.coeffs.c11.real(), 0.8);
}

TEST(Bistate, InvalidCoefficientsRejected)
{
    const EnergyEigensystem e = esys_at(0.5);
    EXPECT_THROW(build_rho_g(CoefficientMatrix::diagonal(0.5, 0.4), e), InvalidStateError);
    EXPECT_THROW(build_rho_g(CoefficientMatrix::diagonal(1.2, -0.2), e), InvalidStateError);
    const CoefficientMatrix not_hermitian{0.5, cplx(0.1, 0.0), cplx(0.2, 0.0), 0.5};
    EXPECT_THROW(build_rho_g(not_hermitian, e), InvalidStateError);
    const CoefficientMatrix not_psd{0.5, cplx(0.6, 0.0), cplx(0.6, 0.0), 0.5};
    try {
        build_rho_g(not_psd, e);
        FAIL();
    } catch (const InvalidStateError& err) {
        EXPECT_NE(std::string(err.what()).find("invalid state coefficients"), std::string::npos);
    }
}

TEST(Bistate, LambdaNumericRejectsComplexSpectrum)
{
    const CMatrix rot = from_rows({{0.5, 1.0}, {-1.0, 0.5}});
    EXPECT_THROW(lambda_numeric(rot), InvalidStateError);
}

TEST(Bistate, InitialStateNames)
{
    EXPECT_EQ(initial_state_from_string("intermediate"), InitialState::Intermediate);
    EXPECT_EQ(to_string(InitialState::Ground), "ground");
    EXPECT_THROW(initial_state_from_string("hot"), ParameterError);
}
