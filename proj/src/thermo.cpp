#include "ptthermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptthermo/ergotropy.hpp"
#include "ptthermo/error.hpp"
#include "ptthermo/parallel.hpp"

namespace ptthermo {

namespace {

void require_index(const Trajectory& traj, std::size_t k)
{
    if (k >= traj.size())
        throw ParameterError("trajectory index " + std::to_string(k) + " out of range");
}

double real_part_checked(cplx value)
{
    if (std::abs(value.imag()) > tol::kEnergyImag)
        throw NonPhysicalError("non-physical energy: imaginary part " +
                               std::to_string(value.imag()));
    return value.real();
}

// Rotates into the frame and returns the Hermitian part after checking the
// anti-Hermitian remainder is round-off.
CMatrix hermitian_in_frame(const CMatrix& rho, const MetricFrame& frame)
{
    const CMatrix rotated = frame.rotate(rho);
    const double scale = std::max(1.0, max_abs(rotated));
    if (max_abs(rotated - rotated.adjoint()) > tol::kFrameHermiticity * scale)
        throw InvalidStateError("invalid state: not Hermitian in the metric frame");
    return 0.5 * (rotated + rotated.adjoint());
}

Eigen::SelfAdjointEigenSolver<CMatrix> state_spectrum(const CMatrix& hermitian)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success)
        throw InvalidStateError("invalid state: eigen solver failed");
    if (solver.eigenvalues().minCoeff() < -tol::kNegativeEigen)
        throw InvalidStateError("invalid state: negative eigenvalue " +
                                std::to_string(solver.eigenvalues().minCoeff()));
    return solver;
}

double entropy_of(const Eigen::VectorXd& lambdas)
{
    double s = 0.0;
    for (Index i = 0; i < lambdas.size(); ++i)
        if (lambdas(i) > tol::kEigenClip)
            s -= lambdas(i) * std::log(lambdas(i));
    return s;
}

} // namespace

double internal_energy_change(const PTHamiltonian& h, const Trajectory& traj, std::size_t k)
{
    require_index(traj, k);
    return real_part_checked((h.matrix * (traj.rho_g[k] - traj.rho_g[0])).trace());
}

double work_done(const CompositeSystem& c, const Trajectory& traj, std::size_t k)
{
    require_index(traj, k);
    return real_part_checked((c.h_int * (traj.rho_gb[0] - traj.rho_gb[k])).trace());
}

double heat_exchanged(const BathSpec& bath, const Trajectory& traj, std::size_t k)
{
    require_index(traj, k);
    if (bath.dim() != traj.dim_bath)
        throw DimensionError("heat_exchanged: bath dimension does not match trajectory");
    return real_part_checked((bath_hamiltonian(bath) * (traj.rho_b[k] - traj.rho_b[0])).trace());
}

double von_neumann_entropy(const CMatrix& rho, const MetricFrame& frame)
{
    const auto solver = state_spectrum(hermitian_in_frame(rho, frame));
    return entropy_of(solver.eigenvalues());
}

RelativeEntropy relative_entropy(const CMatrix& rho, const CMatrix& sigma,
                                 const MetricFrame& frame)
{
    const CMatrix rho_h = hermitian_in_frame(rho, frame);
    const auto rho_spec = state_spectrum(rho_h);
    const auto sigma_spec = state_spectrum(hermitian_in_frame(sigma, frame));

    // Tr(rho log sigma) = sum_j <v_j|rho|v_j> log mu_j with sigma = sum_j mu_j |v_j><v_j|
    const CMatrix& v = sigma_spec.eigenvectors();
    const Eigen::VectorXd weights = (v.adjoint() * rho_h * v).diagonal().real();
    const Eigen::VectorXd& mu = sigma_spec.eigenvalues();

    double null_weight = 0.0;
    double cross = 0.0;
    for (Index j = 0; j < mu.size(); ++j) {
        if (mu(j) <= tol::kEigenClip)
            null_weight += std::max(0.0, weights(j));
        cross += weights(j) * std::log(std::max(mu(j), tol::kEigenClip));
    }
    if (null_weight > tol::kSupportViolation)
        return {std::numeric_limits<double>::infinity(),
                "support of rho not contained in support of sigma (weight " +
                    std::to_string(null_weight) + " outside)"};

    return {-entropy_of(rho_spec.eigenvalues()) - cross, {}};
}

double entropy_production(const CompositeSystem& c, const Trajectory& traj, std::size_t k)
{
    require_index(traj, k);
    const CMatrix product = kron(traj.rho_g[k], traj.rho_b[0]);
    return relative_entropy(traj.rho_gb[k], product, c.composite_frame).value;
}

std::vector<ThermoRecord> thermo_series(const CompositeSystem& c, const PTHamiltonian& h,
                                        const BathSpec& bath, const Trajectory& traj,
                                        ExecPolicy policy)
{
    std::vector<ThermoRecord> out(traj.size());
    detail::parallel_for(static_cast<long>(traj.size()), policy.threads, [&](long i) {
        const auto k = static_cast<std::size_t>(i);
        ThermoRecord& rec = out[k];
        rec.t = traj.times[k];
        rec.dU = internal_energy_change(h, traj, k);
        rec.dW = work_done(c, traj, k);
        rec.dQ_B = heat_exchanged(bath, traj, k);
        rec.first_law_residual = rec.dU - rec.dW + rec.dQ_B;
        rec.sigma = entropy_production(c, traj, k);
        rec.s_vn = von_neumann_entropy(traj.rho_g[k], c.system_frame);
        const EvolvedErgotropy erg = ergotropy_evolved(traj.rho_g[k], c.esys, h);
        rec.ergotropy = erg.numeric.work;
        rec.lambda_plus = erg.lambdas.plus;
        rec.lambda_minus = erg.lambdas.minus;
    });
    return out;
}

std::vector<ScanPoint> third_law_scan(const ScanSetup& setup, std::span<const double> temperatures,
                                      ExecPolicy policy)
{
    for (std::size_t i = 0; i < temperatures.size(); ++i) {
        if (!(temperatures[i] > 0.0))
            throw ParameterError("third_law_scan: temperatures must be positive");
        if (i > 0 && temperatures[i] > temperatures[i - 1])
            throw ParameterError("third_law_scan: temperatures must be descending");
    }
    if (setup.times.empty())
        throw ParameterError("third_law_scan: empty time grid");

    const PTHamiltonian h = build_pt_hamiltonian(setup.params);
    const EnergyEigensystem esys = energy_eigensystem(h, setup.phi);
    const GeneralizedDensityMatrix rho0 = initial_state(setup.initial, esys);

    std::vector<ScanPoint> out;
    out.reserve(temperatures.size());
    for (const double temperature : temperatures) {
        const BathSpec bath(setup.omega_c, setup.bath_dim, temperature);
        const CompositeSystem c = build_composite(h, esys, bath, setup.g);
        const Trajectory traj = evolve(c, rho0, bath, setup.times, policy);
        double peak = 0.0;
        for (const CMatrix& rho : traj.rho_g)
            peak = std::max(peak, von_neumann_entropy(rho, c.system_frame));
        out.push_back({temperature, peak});
    }
    return out;
}

} // namespace ptthermo
