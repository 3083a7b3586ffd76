#include "ptthermo/pt_hamiltonian.hpp"

#include <cmath>
#include <string>

#include "ptthermo/error.hpp"

namespace ptthermo {

namespace {

constexpr cplx kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string describe(const PTParams& p)
{
    return "(r=" + std::to_string(p.r) + ", s=" + std::to_string(p.s) + ")";
}

void require_unbroken(const PTParams& p)
{
    switch (classify_point(p)) {
    case Regime::Exceptional:
        throw ExceptionalPointError("exceptional point " + describe(p) +
                                    ": biorthonormality violated");
    case Regime::Broken:
        throw BrokenPhaseError("broken PT phase " + describe(p) + ": |r| > s");
    default:
        break;
    }
}

} // namespace

std::string_view to_string(Regime regime)
{
    switch (regime) {
    case Regime::Normal:
        return "normal";
    case Regime::GenericUnbroken:
        return "unbroken";
    case Regime::Exceptional:
        return "exceptional";
    case Regime::Broken:
        return "broken";
    }
    return "unknown";
}

std::string_view to_string(PhiConvention convention)
{
    return convention == PhiConvention::Pi ? "pi" : "zero";
}

Regime classify_point(const PTParams& p)
{
    const double gap = p.s - std::abs(p.r);
    if (std::abs(gap) < tol::kExceptionalGuard * p.s)
        return Regime::Exceptional;
    if (gap < 0.0)
        return Regime::Broken;
    if (p.r == 0.0)
        return Regime::Normal;
    return Regime::GenericUnbroken;
}

PTHamiltonian build_pt_hamiltonian(const PTParams& params)
{
    if (!std::isfinite(params.r) || !std::isfinite(params.s) || !std::isfinite(params.psi))
        throw ParameterError("PT parameters must be finite");
    if (!(params.s > 0.0))
        throw ParameterError("PT parameter s must be positive");
    if (std::abs(params.psi - std::numbers::pi / 2) > tol::kPsi)
        throw ParameterError("psi = " + std::to_string(params.psi) +
                             " is outside anticommutator class (requires psi = pi/2)");
    const Regime regime = classify_point(params);
    if (regime == Regime::Exceptional)
        throw ExceptionalPointError("broken PT phase or exceptional point " + describe(params));
    if (regime == Regime::Broken)
        throw BrokenPhaseError("broken PT phase or exceptional point " + describe(params));

    PTHamiltonian h;
    h.params = params;
    h.d = 2.0 * (params.r * params.r + params.s * params.s);
    h.kappa = 1.0 / h.d;
    const double scale = 1.0 / std::sqrt(h.d);
    h.matrix.resize(2, 2);
    h.matrix << kI * params.r * scale, params.s * scale,
                params.s * scale, -kI * params.r * scale;
    return h;
}

double anticommutator_residual(const PTHamiltonian& h)
{
    const CMatrix& m = h.matrix;
    return max_abs(m * m.adjoint() + m.adjoint() * m - identity(2));
}

double FBasis::phi() const { return convention == PhiConvention::Pi ? std::numbers::pi : 0.0; }

double FBasis::phase() const { return convention == PhiConvention::Pi ? -1.0 : 1.0; }

CMatrix f_operator(const PTHamiltonian& h) { return h.matrix.adjoint() * h.matrix; }

FBasis f_basis(const PTHamiltonian& h, PhiConvention convention)
{
    const double r = h.params.r;
    const double s = h.params.s;
    FBasis b;
    b.convention = convention;
    b.f = h.kappa * (s + r) * (s + r);
    b.f_prime = h.kappa * (s - r) * (s - r);
    b.ket_f.resize(2);
    b.ket_f << -kI * kInvSqrt2, kInvSqrt2;
    b.ket_1mf.resize(2);
    if (convention == PhiConvention::Pi)
        b.ket_1mf << -kInvSqrt2, kI * kInvSqrt2;
    else
        b.ket_1mf << kInvSqrt2, -kI * kInvSqrt2;
    return b;
}

std::array<double, 4> verify_ladder(const PTHamiltonian& h, const FBasis& b)
{
    const CMatrix& m = h.matrix;
    const CMatrix md = m.adjoint();
    // e^{i phi} = e^{-i phi} for both admissible conventions
    const double ph = b.phase();
    const double sf = std::sqrt(b.f);
    const double s1mf = std::sqrt(b.f_prime);
    return {
        (m * b.ket_f - ph * sf * b.ket_1mf).norm(),
        (m * b.ket_1mf - ph * s1mf * b.ket_f).norm(),
        (md * b.ket_f - ph * s1mf * b.ket_1mf).norm(),
        (md * b.ket_1mf - ph * sf * b.ket_f).norm(),
    };
}

CMatrix hamiltonian_from_f_basis(const FBasis& b)
{
    const double ph = b.phase();
    return ph * std::sqrt(b.f) * b.ket_1mf * b.ket_f.adjoint() +
           ph * std::sqrt(b.f_prime) * b.ket_f * b.ket_1mf.adjoint();
}

CMatrix EnergyEigensystem::right_matrix() const
{
    CMatrix v(2, 2);
    v.col(0) = ket_Eminus;
    v.col(1) = ket_Eplus;
    return v;
}

CMatrix EnergyEigensystem::dual_matrix() const
{
    CMatrix w(2, 2);
    w.col(0) = dual_Eminus;
    w.col(1) = dual_Eplus;
    return w;
}

double EnergyEigensystem::biorthonormality_residual() const
{
    return max_abs(dual_matrix().adjoint() * right_matrix() - identity(2));
}

double EnergyEigensystem::pseudo_hermiticity_residual(const PTHamiltonian& h) const
{
    return max_abs(eta.inverse() * h.matrix.adjoint() * eta - h.matrix);
}

EnergyEigensystem energy_eigensystem(const PTHamiltonian& h, PhiConvention convention)
{
    const PTParams& p = h.params;
    require_unbroken(p);

    const FBasis b = f_basis(h, convention);
    EnergyEigensystem e;
    e.params = p;
    e.energy_abs = std::sqrt(h.kappa * (p.s * p.s - p.r * p.r));
    e.a_mag = std::sqrt((p.s + p.r) / (p.s - p.r));
    e.phi = b.phi();

    // |E+-> = (|f> +- |a| e^{i phi} |1-f>) / sqrt2, duals with 1/|a|
    const double ph = b.phase();
    e.ket_Eplus = kInvSqrt2 * (b.ket_f + ph * e.a_mag * b.ket_1mf);
    e.ket_Eminus = kInvSqrt2 * (b.ket_f - ph * e.a_mag * b.ket_1mf);
    e.dual_Eplus = kInvSqrt2 * (b.ket_f + ph / e.a_mag * b.ket_1mf);
    e.dual_Eminus = kInvSqrt2 * (b.ket_f - ph / e.a_mag * b.ket_1mf);

    e.eta = e.dual_Eplus * e.dual_Eplus.adjoint() + e.dual_Eminus * e.dual_Eminus.adjoint();
    return e;
}

} // namespace ptthermo
