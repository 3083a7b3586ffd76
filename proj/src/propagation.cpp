#include "ptthermo/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptthermo/error.hpp"
#include "ptthermo/parallel.hpp"

namespace ptthermo {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_time_grid(std::span<const double> times)
{
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (!(times[k] >= 0.0) || !std::isfinite(times[k]))
            throw ParameterError("evolve: times must be finite and non-negative");
        if (k > 0 && times[k] < times[k - 1])
            throw ParameterError("evolve: times must be sorted");
    }
}

Trajectory allocate(const CompositeSystem& c, std::span<const double> times)
{
    Trajectory traj;
    traj.times.assign(times.begin(), times.end());
    traj.rho_gb.resize(times.size());
    traj.rho_g.resize(times.size());
    traj.rho_b.resize(times.size());
    traj.dim_sys = c.dim_sys;
    traj.dim_bath = c.dim_bath;
    return traj;
}

void store(Trajectory& traj, std::size_t k, CMatrix rho_gb)
{
    traj.rho_g[k] = partial_trace_bath(rho_gb, traj.dim_sys, traj.dim_bath);
    traj.rho_b[k] = partial_trace_system(rho_gb, traj.dim_sys, traj.dim_bath);
    traj.rho_gb[k] = std::move(rho_gb);
}

} // namespace

double Trajectory::max_trace_error() const
{
    double worst = 0.0;
    for (std::size_t k = 0; k < size(); ++k) {
        worst = std::max(worst, std::abs(rho_gb[k].trace() - 1.0));
        worst = std::max(worst, std::abs(rho_g[k].trace() - 1.0));
        worst = std::max(worst, std::abs(rho_b[k].trace() - 1.0));
    }
    return worst;
}

Propagator::Propagator(const CMatrix& generator, Mode mode)
    : generator_(require_finite(generator)), mode_(mode)
{
    if (generator.rows() != generator.cols())
        throw DimensionError("Propagator: generator must be square");
}

Propagator::Propagator(const CMatrix& generator) : Propagator(generator, Mode::Direct)
{
    try {
        EigDecomposition eig = eig_general(generator);
        condition_ = eig.condition_estimate;
        if (condition_ < tol::kSpectralFastPath) {
            mode_ = Mode::Spectral;
            values_ = std::move(eig.values);
            right_ = std::move(eig.right_vectors);
            right_inv_ = eig.left_vectors.adjoint();
        }
    } catch (const NearDefectiveError&) {
        mode_ = Mode::Direct;
    }
}

Propagator Propagator::direct(const CMatrix& generator)
{
    return Propagator(generator, Mode::Direct);
}

CMatrix Propagator::forward(double t) const
{
    if (mode_ == Mode::Direct)
        return matrix_exp(-kI * t * generator_);
    const CVector phases = (-kI * t * values_).array().exp().matrix();
    return right_ * phases.asDiagonal() * right_inv_;
}

CMatrix Propagator::backward(double t) const
{
    if (mode_ == Mode::Direct)
        return matrix_exp(kI * t * generator_);
    const CVector phases = (kI * t * values_).array().exp().matrix();
    return right_ * phases.asDiagonal() * right_inv_;
}

CMatrix Propagator::evolve(const CMatrix& rho0, double t) const
{
    if (t == 0.0)
        return rho0;
    if (mode_ == Mode::Direct)
        return forward(t) * rho0 * backward(t);
    // In the eigenbasis: rho'_kl(t) = rho'_kl(0) e^{-i (lambda_k - lambda_l) t}
    const CVector fwd = (-kI * t * values_).array().exp().matrix();
    const CVector bwd = (kI * t * values_).array().exp().matrix();
    const CMatrix in_basis = right_inv_ * rho0 * right_;
    const CMatrix rotated = fwd.asDiagonal() * in_basis * bwd.asDiagonal();
    return right_ * rotated * right_inv_;
}

std::vector<double> uniform_grid(double t_max, int n_steps)
{
    if (n_steps < 2)
        throw ParameterError("time grid needs at least two points");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw ParameterError("time grid needs t_max > 0");
    std::vector<double> t(static_cast<std::size_t>(n_steps));
    const double step = t_max / (n_steps - 1);
    for (int k = 0; k < n_steps; ++k)
        t[static_cast<std::size_t>(k)] = k * step;
    t.back() = t_max;
    return t;
}

Trajectory evolve(const CompositeSystem& c, const GeneralizedDensityMatrix& rho_g0,
                  const BathSpec& bath, std::span<const double> times, ExecPolicy policy)
{
    require_time_grid(times);
    if (bath.dim() != c.dim_bath)
        throw DimensionError("evolve: bath dimension does not match composite");

    const CMatrix rho0 = kron(rho_g0.matrix, thermal_state(bath));
    const Propagator prop(c.h_tilde);
    Trajectory traj = allocate(c, times);

    detail::parallel_for(static_cast<long>(times.size()), policy.threads, [&](long k) {
        const auto idx = static_cast<std::size_t>(k);
        store(traj, idx, prop.evolve(rho0, times[idx]));
    });
    return traj;
}

Trajectory evolve_reference(const CompositeSystem& c, const GeneralizedDensityMatrix& rho_g0,
                            const BathSpec& bath, std::span<const double> times)
{
    require_time_grid(times);
    if (bath.dim() != c.dim_bath)
        throw DimensionError("evolve_reference: bath dimension does not match composite");

    const CMatrix rho0 = kron(rho_g0.matrix, thermal_state(bath));
    Trajectory traj = allocate(c, times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (t == 0.0) {
            store(traj, k, rho0);
            continue;
        }
        const CMatrix u = matrix_exp(-kI * t * c.h_tilde);
        const CMatrix u_dd = matrix_exp(kI * t * c.h_tilde);
        store(traj, k, u * rho0 * u_dd);
    }
    return traj;
}

double check_eta_unitarity(const CompositeSystem& c, double t)
{
    if (t == 0.0)
        return 0.0;
    const CMatrix u = matrix_exp(-kI * t * c.h_tilde);
    const CMatrix u_dd = matrix_exp(kI * t * c.h_tilde);
    return frobenius(u_dd * u - identity(c.h_tilde.rows()));
}

} // namespace ptthermo
