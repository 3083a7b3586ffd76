#pragma once

#include <span>
#include <string>
#include <vector>

#include "ptthermo/bistate.hpp"
#include "ptthermo/linalg.hpp"
#include "ptthermo/open_system.hpp"
#include "ptthermo/propagation.hpp"

namespace ptthermo {

/// dU = Tr[H (rho_G(t_k) - rho_G(0))]
double internal_energy_change(const PTHamiltonian& h, const Trajectory& traj, std::size_t k);
/// dW = Tr[H_GB (rho_GB(0) - rho_GB(t_k))]
double work_done(const CompositeSystem& c, const Trajectory& traj, std::size_t k);
/// dQ_B = Tr[H_B (rho_B(t_k) - rho_B(0))]
double heat_exchanged(const BathSpec& bath, const Trajectory& traj, std::size_t k);

/// -Tr(rho log rho), evaluated on the Hermitian matrix frame.rotate(rho).
/// Eigenvalues below 1e-14 contribute nothing; eigenvalues below -1e-8 throw.
double von_neumann_entropy(const CMatrix& rho, const MetricFrame& frame);

struct RelativeEntropy {
    double value = 0.0;      // +infinity when the support condition fails
    std::string diagnostic;  // empty unless value is the +infinity sentinel
};

/// Tr(rho log rho - rho log sigma) with both states rotated into `frame`.
RelativeEntropy relative_entropy(const CMatrix& rho, const CMatrix& sigma,
                                 const MetricFrame& frame);

/// Sigma = S[rho_GB(t_k) || rho_G(t_k) (x) rho_B(0)] in the (eta^{1/2} (x) I) frame.
double entropy_production(const CompositeSystem& c, const Trajectory& traj, std::size_t k);

struct ThermoRecord {
    double t = 0.0;
    double dU = 0.0;
    double dW = 0.0;
    double dQ_B = 0.0;
    double first_law_residual = 0.0; // dU - dW + dQ_B
    double sigma = 0.0;
    double s_vn = 0.0;
    double ergotropy = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
};

/// One record per trajectory point, evaluated in parallel over time points.
std::vector<ThermoRecord> thermo_series(const CompositeSystem& c, const PTHamiltonian& h,
                                        const BathSpec& bath, const Trajectory& traj,
                                        ExecPolicy policy = {});

struct ScanSetup {
    PTParams params;
    PhiConvention phi = PhiConvention::Pi;
    double g = 0.05;
    double omega_c = 2.0;
    int bath_dim = 15;
    InitialState initial = InitialState::Excited;
    std::vector<double> times;
};

struct ScanPoint {
    double temperature = 0.0;
    double max_entropy = 0.0;
};

/// For each temperature (positive, descending) evolves the setup and reports
/// the largest von Neumann entropy of rho_G(t) over the time grid.
std::vector<ScanPoint> third_law_scan(const ScanSetup& setup, std::span<const double> temperatures,
                                      ExecPolicy policy = {});

} // namespace ptthermo
