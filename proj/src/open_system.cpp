#include "ptthermo/open_system.hpp"

#include <cmath>
#include <string>

#include "ptthermo/error.hpp"

namespace ptthermo {

BathSpec::BathSpec(double omega_c, int dim, double temperature)
    : omega_c_(omega_c), dim_(dim), temperature_(temperature), tail_mass_(0.0)
{
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw ParameterError("bath frequency omega_c must be positive");
    if (dim < 2)
        throw ParameterError("bath dimension must be at least 2");
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw ParameterError("bath temperature must be non-negative");
    // geometric series: the tail fraction is exactly e^{-omega dim / T}
    if (temperature > 0.0)
        tail_mass_ = std::exp(-omega_c * dim / temperature);
}

CMatrix annihilation_op(int dim)
{
    if (dim < 2)
        throw ParameterError("annihilation_op: dimension must be at least 2");
    CMatrix a = CMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n)
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

CMatrix bath_hamiltonian(const BathSpec& bath)
{
    const CMatrix a = annihilation_op(bath.dim());
    return bath.omega_c() * a.adjoint() * a;
}

CMatrix thermal_state(const BathSpec& bath)
{
    CMatrix rho = CMatrix::Zero(bath.dim(), bath.dim());
    if (bath.temperature() == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    double z = 0.0;
    for (int n = 0; n < bath.dim(); ++n) {
        const double w = std::exp(-bath.omega_c() * n / bath.temperature());
        rho(n, n) = w;
        z += w;
    }
    return rho / z;
}

SigmaOps sigma_g_ops(const EnergyEigensystem& esys)
{
    return {esys.ket_Eplus * esys.dual_Eminus.adjoint(),
            esys.ket_Eminus * esys.dual_Eplus.adjoint()};
}

CompositeSystem build_composite(const PTHamiltonian& h, const EnergyEigensystem& esys,
                                const BathSpec& bath, double g)
{
    if (!std::isfinite(g))
        throw ParameterError("coupling constant g must be finite");

    const Index nb = bath.dim();
    const CMatrix id_b = identity(nb);
    const CMatrix id_s = identity(2);
    const CMatrix a = annihilation_op(bath.dim());
    const SigmaOps sigma = sigma_g_ops(esys);
    const MetricFrame sys_frame(esys.eta);

    CompositeSystem c{
        .h_tilde = {},
        .h_int = g * (kron(sigma.plus, a) + kron(sigma.minus, a.adjoint())),
        .h_sys = h.matrix,
        .h_bath = bath_hamiltonian(bath),
        .sigma_plus_g = sigma.plus,
        .sigma_minus_g = sigma.minus,
        .eta_total = kron(esys.eta, id_b),
        .system_frame = sys_frame,
        .composite_frame = sys_frame.lifted(nb),
        .esys = esys,
        .g = g,
        .dim_sys = 2,
        .dim_bath = nb,
    };
    c.h_tilde = kron(h.matrix, id_b) + kron(id_s, c.h_bath) + c.h_int;
    return c;
}

double composite_pseudo_hermiticity_residual(const CompositeSystem& c)
{
    const CMatrix eta_inv = kron(c.esys.eta.inverse(), identity(c.dim_bath));
    return max_abs(eta_inv * c.h_tilde.adjoint() * c.eta_total - c.h_tilde);
}

} // namespace ptthermo
