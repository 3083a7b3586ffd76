#pragma once

#include <complex>
#include <initializer_list>

#include <Eigen/Dense>

#include "ptthermo/tolerances.hpp"

namespace ptthermo {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Throws NonFiniteError if any entry is NaN or infinite.
const CMatrix& require_finite(const CMatrix& m);
CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
CMatrix identity(Index n);

double frobenius(const CMatrix& m);
double max_abs(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol = tol::kHermiticity);
cplx trace(const CMatrix& m);

/// Kronecker product with `a` as the slow (left) index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Traces out the right tensor factor of a (dim_sys*dim_bath)-square matrix.
CMatrix partial_trace_bath(const CMatrix& m, Index dim_sys, Index dim_bath);
/// Traces out the left tensor factor.
CMatrix partial_trace_system(const CMatrix& m, Index dim_sys, Index dim_bath);

/// exp(a) by scaling and squaring with a Pade approximant.
CMatrix matrix_exp(const CMatrix& a);

struct EigDecomposition {
    CVector values;
    CMatrix right_vectors; // columns, unit 2-norm
    CMatrix left_vectors;  // columns, left_vectors^H * right_vectors = I
    double condition_estimate = 1.0;
};

/// Eigendecomposition of a general (possibly non-normal) square matrix.
///
/// Eigenvalues are sorted by real part, then imaginary part. The left vectors
/// are taken from the inverse of the right-vector matrix so that the pair is
/// biorthonormal by construction. `condition_estimate` is the 2-norm
/// condition number of the right-vector matrix; above `max_condition` the
/// input is treated as defective and NearDefectiveError is thrown.
EigDecomposition eig_general(const CMatrix& a,
                             double max_condition = tol::kNearDefectiveCondition);

/// Matrix logarithm of a density-like matrix (real spectrum in [-clip, 1+clip]).
/// Eigenvalues below `clip` are floored at `clip` before the log is taken.
CMatrix matrix_log_psd(const CMatrix& a, double clip = tol::kEigenClip);

/// Similarity frame built from a Hermitian positive-definite metric M:
/// rotate(X) = M^{1/2} X M^{-1/2}. A state that is pseudo-Hermitian with
/// respect to M becomes Hermitian in this frame with the same spectrum.
class MetricFrame {
public:
    explicit MetricFrame(const CMatrix& metric);
    static MetricFrame identity(Index n);

    /// Frame for metric (x) I_n, i.e. the metric lifted onto a composite space
    /// where this frame acts on the left factor.
    MetricFrame lifted(Index n) const;

    CMatrix rotate(const CMatrix& x) const;
    const CMatrix& sqrt() const { return sqrt_; }
    const CMatrix& inv_sqrt() const { return inv_sqrt_; }
    Index dim() const { return sqrt_.rows(); }

private:
    MetricFrame(CMatrix sqrt, CMatrix inv_sqrt);
    CMatrix sqrt_;
    CMatrix inv_sqrt_;
};

} // namespace ptthermo
