#include "ptthermo/ergotropy.hpp"

#include <cmath>
#include <string>

#include "ptthermo/error.hpp"

namespace ptthermo {

namespace {

double real_energy(const CMatrix& h, const CMatrix& rho)
{
    const cplx e = (h * rho).trace();
    if (std::abs(e.imag()) > tol::kEnergyImag)
        throw NonPhysicalError("non-physical energy: imaginary part " + std::to_string(e.imag()));
    return e.real();
}

} // namespace

double ergotropy_closed_form(const CoefficientMatrix& coeffs, const PTParams& params,
                             double coeff_tol)
{
    const Regime regime = classify_point(params);
    if (regime == Regime::Exceptional)
        throw ExceptionalPointError("ergotropy_closed_form: exceptional point");
    if (regime == Regime::Broken)
        throw BrokenPhaseError("ergotropy_closed_form: broken PT phase");
    if (!(params.s > 0.0))
        throw ParameterError("ergotropy_closed_form: s must be positive");
    coeffs.validate(coeff_tol);

    const double s = params.s;
    const double r = params.r;
    const double energy_abs = std::sqrt((s * s - r * r) / (2.0 * (r * r + s * s)));
    const LambdaPair lambda = lambda_closed_form(coeffs, params);
    return energy_abs * (1.0 - 2.0 * coeffs.c11.real() - lambda.minus + lambda.plus);
}

ErgotropyResult ergotropy_numeric(const GeneralizedDensityMatrix& g, const PTHamiltonian& h)
{
    const LambdaPair lambda = lambda_numeric(g.matrix);
    const GeneralizedDensityMatrix passive = passive_state(lambda, g.esys);

    ErgotropyResult out;
    out.active_energy = real_energy(h.matrix, g.matrix);
    out.passive_energy = real_energy(h.matrix, passive.matrix);
    out.work = out.active_energy - out.passive_energy;
    if (out.work < tol::kErgotropyFloor)
        throw InvalidStateError("ergotropy_numeric: negative ergotropy " +
                                std::to_string(out.work));
    return out;
}

EvolvedErgotropy ergotropy_evolved(const CMatrix& rho_g, const EnergyEigensystem& esys,
                                   const PTHamiltonian& h)
{
    const CoefficientMatrix raw = project_coefficients(rho_g, esys);
    const GeneralizedDensityMatrix g{rho_g, raw, esys};

    EvolvedErgotropy out;
    out.lambdas = lambda_numeric(rho_g);
    out.numeric = ergotropy_numeric(g, h);

    if (std::abs(raw.c21 - std::conj(raw.c12)) <= 1e-8 &&
        std::abs(raw.c11.imag()) <= 1e-8 && std::abs(raw.c22.imag()) <= 1e-8) {
        const cplx off = 0.5 * (raw.c12 + std::conj(raw.c21));
        const CoefficientMatrix clean{cplx(raw.c11.real(), 0.0), off, std::conj(off),
                                      cplx(raw.c22.real(), 0.0)};
        try {
            out.closed_form = ergotropy_closed_form(clean, esys.params, tol::kTrajectoryTrace);
        } catch (const InvalidStateError&) {
            // coefficients drifted outside the physical set; leave the cross-check empty
        }
    }
    return out;
}

} // namespace ptthermo
