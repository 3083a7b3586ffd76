#pragma once

#include <optional>

#include "ptthermo/bistate.hpp"
#include "ptthermo/pt_hamiltonian.hpp"

namespace ptthermo {

struct ErgotropyResult {
    double work = 0.0;           // active_energy - passive_energy
    double active_energy = 0.0;  // Tr(H rho_G)
    double passive_energy = 0.0; // Tr(H rho^p)
};

/// |E| (1 - 2 rho^{11} - lambda_- + lambda_+) with lambda_+ the larger root.
double ergotropy_closed_form(const CoefficientMatrix& coeffs, const PTParams& params,
                             double coeff_tol = tol::kCoefficient);

/// Ergotropy from the numerical spectrum of rho_G and the energy-ordered
/// passive state. Throws InvalidStateError if the result is below -1e-10.
ErgotropyResult ergotropy_numeric(const GeneralizedDensityMatrix& g, const PTHamiltonian& h);

struct EvolvedErgotropy {
    ErgotropyResult numeric;
    LambdaPair lambdas;
    // closed form on the re-projected coefficients; empty when those are not
    // Hermitian within 1e-8
    std::optional<double> closed_form;
};

/// Ergotropy of a reduced state produced by evolution. The numeric value is
/// authoritative; the closed form is a cross-check only.
EvolvedErgotropy ergotropy_evolved(const CMatrix& rho_g, const EnergyEigensystem& esys,
                                   const PTHamiltonian& h);

} // namespace ptthermo
