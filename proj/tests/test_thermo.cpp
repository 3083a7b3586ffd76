#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles/oracles.hpp"
#include "ptthermo/error.hpp"
#include "ptthermo/thermo.hpp"
#include "test_support.hpp"

using namespace ptthermo;
using testing_support::params;

namespace {

struct Evolved {
    PTHamiltonian h;
    EnergyEigensystem e;
    BathSpec bath;
    CompositeSystem c;
    GeneralizedDensityMatrix rho0;
    Trajectory traj;
};

Evolved run(double r, InitialState init, int n = 60, double t_max = 20.0, double g = 0.5,
        double temperature = 10.0)
{
    PTHamiltonian h = build_pt_hamiltonian(params(r));
    EnergyEigensystem e = energy_eigensystem(h);
    BathSpec bath(2.0, 15, temperature);
    CompositeSystem c = build_composite(h, e, bath, g);
    GeneralizedDensityMatrix rho0 = initial_state(init, e);
    Trajectory traj = evolve(c, rho0, bath, uniform_grid(t_max, n));
    return {h, e, bath, c, rho0, traj};
}

} // namespace

TEST(Entropy, PureAndMixed)
{
    const MetricFrame id = MetricFrame::identity(2);
    EXPECT_NEAR(von_neumann_entropy(from_rows({{1.0, 0.0}, {0.0, 0.0}}), id), 0.0, 1e-15);
    EXPECT_NEAR(von_neumann_entropy(0.5 * identity(2), id), std::log(2.0), 1e-15);
}

TEST(Entropy, GeneralizedStatesUseMetricFrame)
{
    const EnergyEigensystem e = energy_eigensystem(build_pt_hamiltonian(params(0.9)));
    const MetricFrame frame(e.eta);
    const auto pure = initial_state(InitialState::Intermediate, e);
    EXPECT_NEAR(von_neumann_entropy(pure.matrix, frame), 0.0, 1e-12);

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto g = build_rho_g(testing_support::random_coefficients(rng), e);
        const auto [a, b] = oracle::eigen2(g.matrix);
        EXPECT_NEAR(von_neumann_entropy(g.matrix, frame), -oracle::xlogx(a) - oracle::xlogx(b),
                    1e-12);
    }
    // without the frame the non-Hermitian state is rejected
    EXPECT_THROW(von_neumann_entropy(pure.matrix, MetricFrame::identity(2)), InvalidStateError);
}

TEST(Entropy, RejectsNegativeSpectrum)
{
    EXPECT_THROW(von_neumann_entropy(from_rows({{1.1, 0.0}, {0.0, -0.1}}), MetricFrame::identity(2)),
                 InvalidStateError);
}

TEST(RelativeEntropy, KnownValues)
{
    const MetricFrame id = MetricFrame::identity(2);
    const CMatrix up = from_rows({{1.0, 0.0}, {0.0, 0.0}});
    const RelativeEntropy d = relative_entropy(up, 0.5 * identity(2), id);
    EXPECT_NEAR(d.value, std::log(2.0), 1e-14);
    EXPECT_TRUE(d.diagnostic.empty());
    EXPECT_NEAR(relative_entropy(up, up, id).value, 0.0, 1e-12);

    const CMatrix down = from_rows({{0.0, 0.0}, {0.0, 1.0}});
    const RelativeEntropy bad = relative_entropy(0.5 * identity(2), down, id);
    EXPECT_EQ(bad.value, std::numeric_limits<double>::infinity());
    EXPECT_FALSE(bad.diagnostic.empty());
}

TEST(RelativeEntropy, NonNegativeForRandomStates)
{
    std::mt19937_64 rng(32);
    const MetricFrame id = MetricFrame::identity(4);
    for (int trial = 0; trial < 20; ++trial) {
        CMatrix a = testing_support::random_matrix(rng, 4);
        CMatrix b = testing_support::random_matrix(rng, 4);
        CMatrix rho = a * a.adjoint();
        CMatrix sigma = b * b.adjoint();
        rho /= rho.trace();
        sigma /= sigma.trace();
        EXPECT_GE(relative_entropy(rho, sigma, id).value, 0.0);
    }
}

TEST(Laws, EnergyBookkeepingAtStart)
{
    const Evolved x = run(0.5, InitialState::Excited, 10);
    EXPECT_EQ(internal_energy_change(x.h, x.traj, 0), 0.0);
    EXPECT_EQ(work_done(x.c, x.traj, 0), 0.0);
    EXPECT_EQ(heat_exchanged(x.bath, x.traj, 0), 0.0);
    EXPECT_NEAR(entropy_production(x.c, x.traj, 0), 0.0, 1e-12);
    EXPECT_THROW(internal_energy_change(x.h, x.traj, 10), ParameterError);
}

TEST(Laws, FirstLawBalances)
{
    for (double r : {0.0, 0.5, 0.95}) {
        const Evolved x = run(r, InitialState::Excited);
        for (const auto& rec : thermo_series(x.c, x.h, x.bath, x.traj))
            EXPECT_LT(std::abs(rec.first_law_residual), 1e-8) << r << " t=" << rec.t;
    }
}

TEST(Laws, EntropyProductionMatchesSeparableOracle)
{
    const auto p0 = oracle::thermal_weights(2.0, 15, 10.0);
    for (double r : {0.0, 0.5, 0.95}) {
        for (auto init : {InitialState::Excited, InitialState::Intermediate, InitialState::Ground}) {
            const Evolved x = run(r, init, 30);
            const auto spectrum = oracle::eigen2(x.rho0.matrix);
            for (std::size_t k = 0; k < x.traj.size(); ++k) {
                const double ref = oracle::entropy_production_separable(spectrum, p0,
                                                                        x.traj.rho_g[k],
                                                                        x.traj.rho_b[k]);
                EXPECT_NEAR(entropy_production(x.c, x.traj, k), ref, 1e-9)
                    << "r=" << r << " state=" << to_string(init) << " k=" << k;
            }
        }
    }
}

TEST(Laws, SeriesIsThreadCountIndependent)
{
    const Evolved x = run(0.95, InitialState::Intermediate, 20);
    const auto one = thermo_series(x.c, x.h, x.bath, x.traj, ExecPolicy{1});
    const auto many = thermo_series(x.c, x.h, x.bath, x.traj, ExecPolicy{3});
    ASSERT_EQ(one.size(), many.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
        EXPECT_EQ(one[k].sigma, many[k].sigma);
        EXPECT_EQ(one[k].ergotropy, many[k].ergotropy);
        EXPECT_EQ(one[k].first_law_residual, many[k].first_law_residual);
    }
}

TEST(Laws, ErgotropyRecordMatchesHermitianOracleAtNormalPoint)
{
    const Evolved x = run(0.0, InitialState::Excited, 40);
    const auto recs = thermo_series(x.c, x.h, x.bath, x.traj);
    for (std::size_t k = 0; k < recs.size(); ++k)
        EXPECT_NEAR(recs[k].ergotropy, oracle::hermitian_ergotropy(x.h.matrix, x.traj.rho_g[k]),
                    1e-10);
    EXPECT_NEAR(recs[0].ergotropy, std::sqrt(2.0), 1e-10);
}

TEST(ThirdLaw, ScanValidatesTemperatures)
{
    ScanSetup setup;
    setup.params = params(0.5);
    setup.times = uniform_grid(2.0, 5);
    const std::vector<double> rising{0.1, 1.0};
    EXPECT_THROW(third_law_scan(setup, rising), ParameterError);
    const std::vector<double> zero{1.0, 0.0};
    EXPECT_THROW(third_law_scan(setup, zero), ParameterError);
}

TEST(ThirdLaw, EntropyFallsWithTemperature)
{
    ScanSetup setup;
    setup.params = params(0.5);
    setup.g = 0.05;
    setup.times = uniform_grid(20.0, 100);
    const std::vector<double> temps{10.0, 1.0, 0.1};
    const auto scan = third_law_scan(setup, temps);
    ASSERT_EQ(scan.size(), 3u);
    EXPECT_GT(scan[0].max_entropy, scan[1].max_entropy);
    EXPECT_GT(scan[1].max_entropy, scan[2].max_entropy);
}
