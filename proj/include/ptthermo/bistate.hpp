#pragma once

#include <string_view>

#include "ptthermo/linalg.hpp"
#include "ptthermo/pt_hamiltonian.hpp"
#include "ptthermo/tolerances.hpp"

namespace ptthermo {

/// Coefficients rho^{ij} of the projectors |E_i><<E_j|, index 1 = E-, 2 = E+.
struct CoefficientMatrix {
    cplx c11{1.0, 0.0};
    cplx c12{0.0, 0.0};
    cplx c21{0.0, 0.0};
    cplx c22{0.0, 0.0};

    static CoefficientMatrix diagonal(double ground, double excited);
    static CoefficientMatrix from_matrix(const CMatrix& c);
    CMatrix as_matrix() const;

    /// Unit trace, real diagonal in [0,1], c21 = conj(c12), c11 c22 - |c12|^2 >= -tol.
    /// Throws InvalidStateError("invalid state coefficients: ...").
    void validate(double tol = tol::kCoefficient) const;
};

/// Generalized density matrix rho_G = sum_ij rho^{ij} |E_i><<E_j| in the
/// computational basis, together with its coefficients.
struct GeneralizedDensityMatrix {
    CMatrix matrix;
    CoefficientMatrix coeffs;
    EnergyEigensystem esys;
};

struct LambdaPair {
    double plus = 1.0;  // larger root
    double minus = 0.0; // smaller root
};

/// Projector sum over the biorthonormal eigenvectors.
CMatrix rho_g_projector_sum(const CoefficientMatrix& coeffs, const EnergyEigensystem& esys);

/// Element-wise closed form in terms of r, s and the coefficients. Valid in
/// the phi = pi eigenvector convention, which both conventions share.
CMatrix rho_g_closed_form(const CoefficientMatrix& coeffs, const PTParams& params);

/// Builds rho_G and cross-checks the projector sum against the closed form.
GeneralizedDensityMatrix build_rho_g(const CoefficientMatrix& coeffs,
                                     const EnergyEigensystem& esys);

/// lambda_+- = 1/2 +- 1/2 sqrt(1 - 4 det rho_G), with det rho_G taken from the
/// closed-form elements.
LambdaPair lambda_closed_form(const CoefficientMatrix& coeffs, const PTParams& params);

/// Eigenvalues of an arbitrary 2x2 generalized state, sorted. Throws
/// InvalidStateError when an eigenvalue has imaginary part above 1e-9.
LambdaPair lambda_numeric(const CMatrix& rho);

/// Closed-form eigenvalues, verified against lambda_numeric.
LambdaPair lambda_eigenvalues(const GeneralizedDensityMatrix& g);

/// Passive state: the larger eigenvalue populates |E->, the smaller |E+>.
GeneralizedDensityMatrix passive_state(const GeneralizedDensityMatrix& g);
GeneralizedDensityMatrix passive_state(LambdaPair lambdas, const EnergyEigensystem& esys);

/// Tr(obs * rho_G)
cplx generalized_expectation(const CMatrix& obs, const GeneralizedDensityMatrix& g);

enum class InitialState { Ground, Excited, Intermediate };

std::string_view to_string(InitialState kind);
InitialState initial_state_from_string(std::string_view name);

/// Ground: diag(1,0). Excited: diag(0,1). Intermediate: the pure state
/// (sqrt3/2)|E-> + (1/2)|E+>, coefficients [[3/4, sqrt3/4], [sqrt3/4, 1/4]].
CoefficientMatrix initial_coefficients(InitialState kind);
GeneralizedDensityMatrix initial_state(InitialState kind, const EnergyEigensystem& esys);

/// Raw coefficients <<E_i| rho |E_j> of an arbitrary 2x2 operator.
CoefficientMatrix project_coefficients(const CMatrix& rho, const EnergyEigensystem& esys);

/// Re-projects a state produced by open evolution onto the biorthonormal basis.
/// Imaginary drift on the diagonal and the anti-Hermitian part of the
/// coefficients are discarded after checking they are below `tol`.
GeneralizedDensityMatrix from_evolved(const CMatrix& rho, const EnergyEigensystem& esys,
                                      double tol = tol::kTrajectoryTrace);

} // namespace ptthermo
