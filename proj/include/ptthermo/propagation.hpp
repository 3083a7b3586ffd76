#pragma once

#include <span>
#include <vector>

#include "ptthermo/bistate.hpp"
#include "ptthermo/linalg.hpp"
#include "ptthermo/open_system.hpp"

namespace ptthermo {

/// Thread count for the OpenMP kernels; 0 leaves the choice to the runtime.
struct ExecPolicy {
    int threads = 0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<CMatrix> rho_gb; // composite states
    std::vector<CMatrix> rho_g;  // reduced system states
    std::vector<CMatrix> rho_b;  // reduced bath states
    Index dim_sys = 2;
    Index dim_bath = 0;

    std::size_t size() const { return times.size(); }
    /// max over k and over the three state families of |Tr(rho) - 1|
    double max_trace_error() const;
};

/// exp(-i H t) and its eta-pseudo adjoint exp(+i H t) for a fixed generator.
///
/// In spectral mode the generator is diagonalised once and every time point is
/// assembled from the shared biorthogonal eigenbasis. When the eigenvector
/// condition number reaches 1e6 (or the decomposition is refused as
/// near-defective) each time point falls back to a Pade exponential.
class Propagator {
public:
    enum class Mode { Spectral, Direct };

    explicit Propagator(const CMatrix& generator);
    static Propagator direct(const CMatrix& generator);

    Mode mode() const { return mode_; }
    double condition_estimate() const { return condition_; }

    CMatrix forward(double t) const;  // U(t)
    CMatrix backward(double t) const; // U^double-dagger(t)

    /// U(t) rho0 U^double-dagger(t)
    CMatrix evolve(const CMatrix& rho0, double t) const;

private:
    Propagator(const CMatrix& generator, Mode mode);

    CMatrix generator_;
    Mode mode_ = Mode::Direct;
    double condition_ = 0.0;
    CVector values_;
    CMatrix right_;
    CMatrix right_inv_;
};

/// k * t_max / (n_steps - 1), k = 0..n_steps-1.
std::vector<double> uniform_grid(double t_max, int n_steps);

/// Evolves rho_G(0) (x) rho_B(0) under H~ and reduces to both factors.
/// Time points are independent and distributed over OpenMP threads.
Trajectory evolve(const CompositeSystem& c, const GeneralizedDensityMatrix& rho_g0,
                  const BathSpec& bath, std::span<const double> times, ExecPolicy policy = {});

/// Serial reference: two Pade exponentials per time point, no shared
/// decomposition.
Trajectory evolve_reference(const CompositeSystem& c, const GeneralizedDensityMatrix& rho_g0,
                            const BathSpec& bath, std::span<const double> times);

/// ||exp(+i H~ t) exp(-i H~ t) - I||_F
double check_eta_unitarity(const CompositeSystem& c, double t);

} // namespace ptthermo
