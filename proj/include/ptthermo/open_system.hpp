#pragma once

#include "ptthermo/bistate.hpp"
#include "ptthermo/linalg.hpp"
#include "ptthermo/pt_hamiltonian.hpp"

namespace ptthermo {

/// Single bosonic mode H_B = omega_c a^dagger a truncated to `dim` Fock states,
/// initially thermal at `temperature` (k_B = 1).
class BathSpec {
public:
    BathSpec(double omega_c, int dim, double temperature);

    double omega_c() const { return omega_c_; }
    int dim() const { return dim_; }
    double temperature() const { return temperature_; }

    /// Thermal weight of the untruncated mode above the cutoff,
    /// sum_{n>=dim} e^{-omega n / T} / sum_{n>=0} e^{-omega n / T}.
    double tail_mass() const { return tail_mass_; }
    bool truncation_warning() const { return tail_mass_ > tol::kTailMassWarning; }

private:
    double omega_c_;
    int dim_;
    double temperature_;
    double tail_mass_;
};

CMatrix annihilation_op(int dim);
CMatrix bath_hamiltonian(const BathSpec& bath);

/// Diagonal Gibbs state renormalised on the truncated space; |0><0| at T = 0.
CMatrix thermal_state(const BathSpec& bath);

struct SigmaOps {
    CMatrix plus;  // |E+><<E-|
    CMatrix minus; // |E-><<E+|
};

SigmaOps sigma_g_ops(const EnergyEigensystem& esys);

/// System (x) bath with Jaynes-Cummings type coupling. System is the left
/// tensor factor throughout.
struct CompositeSystem {
    CMatrix h_tilde;  // H (x) I + I (x) H_B + H_GB
    CMatrix h_int;    // g (sigma+ (x) a + sigma- (x) a^dagger)
    CMatrix h_sys;    // 2x2
    CMatrix h_bath;   // dim_bath x dim_bath
    CMatrix sigma_plus_g;
    CMatrix sigma_minus_g;
    CMatrix eta_total; // eta (x) I_B
    MetricFrame system_frame;
    MetricFrame composite_frame;
    EnergyEigensystem esys;
    double g = 0.0;
    Index dim_sys = 2;
    Index dim_bath = 0;
};

CompositeSystem build_composite(const PTHamiltonian& h, const EnergyEigensystem& esys,
                                const BathSpec& bath, double g);

/// max |(eta^{-1} (x) I) H~^dagger (eta (x) I) - H~|
double composite_pseudo_hermiticity_residual(const CompositeSystem& c);

} // namespace ptthermo
