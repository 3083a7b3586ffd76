#pragma once

#include <array>
#include <numbers>
#include <string_view>

#include "ptthermo/linalg.hpp"

namespace ptthermo {

/// Parameters of the 2x2 PT-symmetric Hamiltonian [[r e^{i psi}, s], [s, r e^{-i psi}]].
struct PTParams {
    double r = 0.0;
    double s = 1.0;
    double psi = std::numbers::pi / 2;
};

enum class Regime { Normal, GenericUnbroken, Exceptional, Broken };

std::string_view to_string(Regime regime);

/// Exceptional when |s - |r|| < 1e-12 s, normal at r = 0, broken for |r| > s.
Regime classify_point(const PTParams& params);

/// Rescaled Hamiltonian H = [[ir, s], [s, -ir]] / sqrt(d), with d = 2(r^2 + s^2),
/// so that {H, H^dagger} = I.
struct PTHamiltonian {
    PTParams params;
    double d = 0.0;
    double kappa = 0.0;
    CMatrix matrix;
};

/// Throws ParameterError for psi != pi/2 or s <= 0, ExceptionalPointError at
/// |r| = s and BrokenPhaseError for |r| > s.
PTHamiltonian build_pt_hamiltonian(const PTParams& params);

/// max |{H, H^dagger} - I|
double anticommutator_residual(const PTHamiltonian& h);

/// Which of the two phase choices for |1-f> is used: (-1, i)/sqrt2 (phi = pi)
/// or (1, -i)/sqrt2 (phi = 0). Energy eigenvectors do not depend on the choice.
enum class PhiConvention { Pi, Zero };

std::string_view to_string(PhiConvention convention);

/// Orthonormal eigenbasis of F = H^dagger H.
struct FBasis {
    double f = 0.0;
    double f_prime = 0.0; // = kappa (s - r)^2, the eigenvalue of |1-f>
    CVector ket_f;
    CVector ket_1mf;
    PhiConvention convention = PhiConvention::Pi;

    double phi() const;
    /// e^{i phi}, exactly -1 or +1.
    double phase() const;
};

CMatrix f_operator(const PTHamiltonian& h);
FBasis f_basis(const PTHamiltonian& h, PhiConvention convention = PhiConvention::Pi);

/// Norms of the four ladder-relation residuals
///   H|f> - e^{i phi} sqrt(f) |1-f>,       H|1-f> - e^{-i phi} sqrt(1-f) |f>,
///   H^+|f> - e^{i phi} sqrt(1-f) |1-f>,   H^+|1-f> - e^{-i phi} sqrt(f) |f>.
std::array<double, 4> verify_ladder(const PTHamiltonian& h, const FBasis& basis);

/// H assembled from its off-block-diagonal form in the F eigenbasis.
CMatrix hamiltonian_from_f_basis(const FBasis& basis);

/// Biorthonormal energy eigensystem. Index order everywhere in the library is
/// (E-, E+): coefficient index 1 is the ground state, 2 the excited state.
struct EnergyEigensystem {
    PTParams params;
    double energy_abs = 0.0;
    double a_mag = 0.0;
    double phi = 0.0;
    CVector ket_Eplus;
    CVector ket_Eminus;
    CVector dual_Eplus;
    CVector dual_Eminus;
    CMatrix eta; // sum_n |E_n>> <<E_n|

    /// Columns (|E->, |E+>).
    CMatrix right_matrix() const;
    /// Columns (|E->>, |E+>>); dual_matrix()^H * right_matrix() = I.
    CMatrix dual_matrix() const;
    /// max |<<E_i|E_j> - delta_ij|
    double biorthonormality_residual() const;
    /// max |eta^{-1} H^dagger eta - H|
    double pseudo_hermiticity_residual(const PTHamiltonian& h) const;
};

/// Throws ExceptionalPointError when |r| >= s (|a| is 0 or infinite there).
EnergyEigensystem energy_eigensystem(const PTHamiltonian& h,
                                     PhiConvention convention = PhiConvention::Pi);

} // namespace ptthermo
