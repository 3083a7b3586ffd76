#include "ptthermo/bistate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptthermo/error.hpp"

namespace ptthermo {

namespace {

constexpr cplx kI{0.0, 1.0};

[[noreturn]] void invalid(const std::string& why)
{
    throw InvalidStateError("invalid state coefficients: " + why);
}

} // namespace

CoefficientMatrix CoefficientMatrix::diagonal(double ground, double excited)
{
    return {cplx(ground, 0.0), cplx(0.0, 0.0), cplx(0.0, 0.0), cplx(excited, 0.0)};
}

CoefficientMatrix CoefficientMatrix::from_matrix(const CMatrix& c)
{
    if (c.rows() != 2 || c.cols() != 2)
        throw DimensionError("coefficient matrix must be 2x2");
    return {c(0, 0), c(0, 1), c(1, 0), c(1, 1)};
}

CMatrix CoefficientMatrix::as_matrix() const
{
    CMatrix c(2, 2);
    c << c11, c12, c21, c22;
    return c;
}

void CoefficientMatrix::validate(double tol) const
{
    if (!as_matrix().allFinite())
        invalid("non-finite entry");
    if (std::abs(c11.imag()) > tol || std::abs(c22.imag()) > tol)
        invalid("diagonal entries must be real");
    if (std::abs(c11.real() + c22.real() - 1.0) > tol)
        invalid("trace " + std::to_string(c11.real() + c22.real()) + " != 1");
    if (c11.real() < -tol || c11.real() > 1.0 + tol || c22.real() < -tol ||
        c22.real() > 1.0 + tol)
        invalid("populations outside [0, 1]");
    if (std::abs(c21 - std::conj(c12)) > tol)
        invalid("coefficient matrix is not Hermitian");
    if (c11.real() * c22.real() - std::norm(c12) < -tol)
        invalid("coefficient matrix is not positive semidefinite");
}

CMatrix rho_g_projector_sum(const CoefficientMatrix& coeffs, const EnergyEigensystem& esys)
{
    return esys.right_matrix() * coeffs.as_matrix() * esys.dual_matrix().adjoint();
}

CMatrix rho_g_closed_form(const CoefficientMatrix& k, const PTParams& p)
{
    const double s = p.s;
    const double r = p.r;
    const double q = std::sqrt(s * s - r * r);
    const cplx plus = std::pow(cplx(std::sqrt(s + r), std::sqrt(s - r)), 2);
    const cplx minus = std::pow(cplx(std::sqrt(s + r), -std::sqrt(s - r)), 2);
    const double twice_s = 2.0 * s;
    const double denom = 4.0 * q;

    CMatrix rho(2, 2);
    rho(0, 0) = (-kI * plus * k.c11 - kI * twice_s * k.c12 + kI * twice_s * k.c21 +
                 kI * minus * k.c22) / denom;
    rho(0, 1) = (-twice_s * k.c11 - plus * k.c12 + minus * k.c21 + twice_s * k.c22) / denom;
    rho(1, 0) = (-twice_s * k.c11 - minus * k.c12 + plus * k.c21 + twice_s * k.c22) / denom;
    rho(1, 1) = (kI * minus * k.c11 + kI * twice_s * k.c12 - kI * twice_s * k.c21 -
                 kI * plus * k.c22) / denom;
    return rho;
}

GeneralizedDensityMatrix build_rho_g(const CoefficientMatrix& coeffs,
                                     const EnergyEigensystem& esys)
{
    coeffs.validate();
    GeneralizedDensityMatrix g{rho_g_projector_sum(coeffs, esys), coeffs, esys};

    const CMatrix closed = rho_g_closed_form(coeffs, esys.params);
    const double scale = std::max(1.0, max_abs(g.matrix));
    if (max_abs(closed - g.matrix) > tol::kTwoPath * scale)
        throw Error("build_rho_g: projector sum and closed form disagree by " +
                    std::to_string(max_abs(closed - g.matrix)));
    if (std::abs(g.matrix.trace() - 1.0) > tol::kStateTrace)
        throw InvalidStateError("build_rho_g: trace differs from one");
    return g;
}

LambdaPair lambda_closed_form(const CoefficientMatrix& coeffs, const PTParams& params)
{
    const CMatrix rho = rho_g_closed_form(coeffs, params);
    const cplx det = rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0);
    if (std::abs(det.imag()) > tol::kStateImag)
        throw InvalidStateError("invalid generalized state: complex determinant");
    const double radicand = 1.0 - 4.0 * det.real();
    if (radicand < -tol::kStateImag)
        throw InvalidStateError("invalid generalized state: complex eigenvalues");
    const double root = 0.5 * std::sqrt(std::max(0.0, radicand));
    return {0.5 + root, 0.5 - root};
}

LambdaPair lambda_numeric(const CMatrix& rho)
{
    if (rho.rows() != 2 || rho.cols() != 2)
        throw DimensionError("lambda_numeric: expected a 2x2 state");
    Eigen::ComplexEigenSolver<CMatrix> solver(rho, false);
    if (solver.info() != Eigen::Success)
        throw InvalidStateError("invalid generalized state: eigenvalues did not converge");
    const CVector& v = solver.eigenvalues();
    for (Index k = 0; k < 2; ++k)
        if (std::abs(v(k).imag()) > tol::kStateImag)
            throw InvalidStateError("invalid generalized state: complex eigenvalue");
    const double a = v(0).real();
    const double b = v(1).real();
    return {std::max(a, b), std::min(a, b)};
}

LambdaPair lambda_eigenvalues(const GeneralizedDensityMatrix& g)
{
    const LambdaPair closed = lambda_closed_form(g.coeffs, g.esys.params);
    const LambdaPair numeric = lambda_numeric(g.matrix);
    if (std::abs(closed.plus - numeric.plus) > tol::kLambda ||
        std::abs(closed.minus - numeric.minus) > tol::kLambda)
        throw Error("lambda_eigenvalues: closed form disagrees with numerical eigenvalues");
    return closed;
}

GeneralizedDensityMatrix passive_state(LambdaPair lambdas, const EnergyEigensystem& esys)
{
    const double large = std::max(lambdas.plus, lambdas.minus);
    const double small = std::min(lambdas.plus, lambdas.minus);
    const CoefficientMatrix coeffs = CoefficientMatrix::diagonal(large, small);
    return {rho_g_projector_sum(coeffs, esys), coeffs, esys};
}

GeneralizedDensityMatrix passive_state(const GeneralizedDensityMatrix& g)
{
    return passive_state(lambda_eigenvalues(g), g.esys);
}

cplx generalized_expectation(const CMatrix& obs, const GeneralizedDensityMatrix& g)
{
    if (obs.rows() != 2 || obs.cols() != 2)
        throw DimensionError("generalized_expectation: observable must be 2x2");
    return (obs * g.matrix).trace();
}

std::string_view to_string(InitialState kind)
{
    switch (kind) {
    case InitialState::Ground:
        return "ground";
    case InitialState::Excited:
        return "excited";
    case InitialState::Intermediate:
        return "intermediate";
    }
    return "unknown";
}

InitialState initial_state_from_string(std::string_view name)
{
    if (name == "ground")
        return InitialState::Ground;
    if (name == "excited")
        return InitialState::Excited;
    if (name == "intermediate")
        return InitialState::Intermediate;
    throw ParameterError("unknown initial state '" + std::string(name) +
                         "' (expected ground, excited or intermediate)");
}

CoefficientMatrix initial_coefficients(InitialState kind)
{
    switch (kind) {
    case InitialState::Ground:
        return CoefficientMatrix::diagonal(1.0, 0.0);
    case InitialState::Excited:
        return CoefficientMatrix::diagonal(0.0, 1.0);
    case InitialState::Intermediate: {
        const double off = std::sqrt(3.0) / 4.0;
        return {cplx(0.75, 0.0), cplx(off, 0.0), cplx(off, 0.0), cplx(0.25, 0.0)};
    }
    }
    throw ParameterError("unknown initial state");
}

GeneralizedDensityMatrix initial_state(InitialState kind, const EnergyEigensystem& esys)
{
    return build_rho_g(initial_coefficients(kind), esys);
}

CoefficientMatrix project_coefficients(const CMatrix& rho, const EnergyEigensystem& esys)
{
    if (rho.rows() != 2 || rho.cols() != 2)
        throw DimensionError("project_coefficients: expected a 2x2 operator");
    return CoefficientMatrix::from_matrix(esys.dual_matrix().adjoint() * rho * esys.right_matrix());
}

GeneralizedDensityMatrix from_evolved(const CMatrix& rho, const EnergyEigensystem& esys,
                                      double tol)
{
    CoefficientMatrix raw = project_coefficients(rho, esys);
    raw.validate(tol);
    const cplx off = 0.5 * (raw.c12 + std::conj(raw.c21));
    const CoefficientMatrix clean{cplx(raw.c11.real(), 0.0), off, std::conj(off),
                                  cplx(raw.c22.real(), 0.0)};
    return {rho, clean, esys};
}

} // namespace ptthermo
