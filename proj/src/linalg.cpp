#include "ptthermo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "ptthermo/error.hpp"

namespace ptthermo {

namespace {

void require_square(const CMatrix& a, const char* what)
{
    if (a.rows() != a.cols() || a.rows() == 0)
        throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

} // namespace

const CMatrix& require_finite(const CMatrix& m)
{
    if (!m.allFinite())
        throw NonFiniteError("matrix contains NaN or infinite entries");
    return m;
}

CMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows)
{
    const auto n_rows = static_cast<Index>(rows.size());
    const auto n_cols = n_rows == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
    if (n_rows == 0 || n_cols == 0)
        throw DimensionError("from_rows: empty matrix");
    CMatrix m(n_rows, n_cols);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != n_cols)
            throw DimensionError("from_rows: ragged rows");
        Index j = 0;
        for (const auto& v : row)
            m(i, j++) = v;
        ++i;
    }
    require_finite(m);
    return m;
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

double frobenius(const CMatrix& m) { return m.norm(); }

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const CMatrix& m, double tol)
{
    return m.rows() == m.cols() && max_abs(m - m.adjoint()) <= tol;
}

cplx trace(const CMatrix& m) { return m.trace(); }

CMatrix kron(const CMatrix& a, const CMatrix& b)
{
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix partial_trace_bath(const CMatrix& m, Index dim_sys, Index dim_bath)
{
    const Index n = dim_sys * dim_bath;
    if (dim_sys < 1 || dim_bath < 1 || m.rows() != n || m.cols() != n)
        throw DimensionError("partial_trace_bath: malformed composite (" + std::to_string(m.rows()) +
                             "x" + std::to_string(m.cols()) + " vs " + std::to_string(dim_sys) +
                             "*" + std::to_string(dim_bath) + ")");
    CMatrix out = CMatrix::Zero(dim_sys, dim_sys);
    for (Index i = 0; i < dim_sys; ++i)
        for (Index j = 0; j < dim_sys; ++j)
            out(i, j) = m.block(i * dim_bath, j * dim_bath, dim_bath, dim_bath).trace();
    return out;
}

CMatrix partial_trace_system(const CMatrix& m, Index dim_sys, Index dim_bath)
{
    const Index n = dim_sys * dim_bath;
    if (dim_sys < 1 || dim_bath < 1 || m.rows() != n || m.cols() != n)
        throw DimensionError("partial_trace_system: malformed composite");
    CMatrix out = CMatrix::Zero(dim_bath, dim_bath);
    for (Index i = 0; i < dim_sys; ++i)
        out += m.block(i * dim_bath, i * dim_bath, dim_bath, dim_bath);
    return out;
}

CMatrix matrix_exp(const CMatrix& a)
{
    require_square(a, "matrix_exp");
    require_finite(a);
    CMatrix out = a.exp();
    require_finite(out);
    return out;
}

EigDecomposition eig_general(const CMatrix& a, double max_condition)
{
    require_square(a, "eig_general");
    require_finite(a);

    Eigen::ComplexEigenSolver<CMatrix> solver(a, true);
    if (solver.info() != Eigen::Success)
        throw NearDefectiveError("eig_general: eigenvalue iteration did not converge");

    const Index n = a.rows();
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    const CVector& raw_values = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
        const cplx vx = raw_values(x);
        const cplx vy = raw_values(y);
        if (vx.real() != vy.real())
            return vx.real() < vy.real();
        return vx.imag() < vy.imag();
    });

    EigDecomposition out;
    out.values.resize(n);
    out.right_vectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        const Index src = order[static_cast<std::size_t>(k)];
        out.values(k) = raw_values(src);
        CVector col = solver.eigenvectors().col(src);
        const double nrm = col.norm();
        if (!(nrm > 0.0))
            throw NearDefectiveError("eig_general: zero eigenvector");
        out.right_vectors.col(k) = col / nrm;
    }

    Eigen::JacobiSVD<CMatrix> svd(out.right_vectors);
    const auto& sv = svd.singularValues();
    const double smallest = sv(n - 1);
    out.condition_estimate =
        smallest > 0.0 ? sv(0) / smallest : std::numeric_limits<double>::infinity();
    if (!(out.condition_estimate <= max_condition))
        throw NearDefectiveError("eig_general: near-defective matrix (eigenvector condition " +
                                 std::to_string(out.condition_estimate) + ")");

    out.left_vectors = out.right_vectors.partialPivLu().inverse().adjoint();
    return out;
}

CMatrix matrix_log_psd(const CMatrix& a, double clip)
{
    require_square(a, "matrix_log_psd");
    require_finite(a);

    auto floored_log = [clip](double lambda) {
        if (lambda < -clip)
            throw NotPsdError("matrix_log_psd: matrix is not positive semidefinite (eigenvalue " +
                              std::to_string(lambda) + ")");
        return std::log(std::max(lambda, clip));
    };

    if (is_hermitian(a)) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (a + a.adjoint()));
        const Eigen::VectorXd& lambdas = solver.eigenvalues();
        CVector logs(lambdas.size());
        for (Index k = 0; k < lambdas.size(); ++k)
            logs(k) = floored_log(lambdas(k));
        const CMatrix& q = solver.eigenvectors();
        return q * logs.asDiagonal() * q.adjoint();
    }

    const EigDecomposition eig = eig_general(a);
    CVector logs(eig.values.size());
    for (Index k = 0; k < eig.values.size(); ++k) {
        if (std::abs(eig.values(k).imag()) > tol::kStateImag)
            throw InvalidStateError("matrix_log_psd: not a valid state (complex eigenvalue)");
        logs(k) = floored_log(eig.values(k).real());
    }
    return eig.right_vectors * logs.asDiagonal() * eig.left_vectors.adjoint();
}

MetricFrame::MetricFrame(CMatrix sqrt, CMatrix inv_sqrt)
    : sqrt_(std::move(sqrt)), inv_sqrt_(std::move(inv_sqrt))
{
}

MetricFrame::MetricFrame(const CMatrix& metric)
{
    require_square(metric, "MetricFrame");
    require_finite(metric);
    if (!is_hermitian(metric, tol::kFrameHermiticity * std::max(1.0, max_abs(metric))))
        throw InvalidStateError("MetricFrame: metric is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (metric + metric.adjoint()));
    const Eigen::VectorXd& lambdas = solver.eigenvalues();
    if (!(lambdas.minCoeff() > 0.0))
        throw NotPsdError("MetricFrame: metric is not positive definite");
    const CMatrix& q = solver.eigenvectors();
    const Eigen::VectorXd root = lambdas.cwiseSqrt();
    sqrt_ = q * root.cast<cplx>().asDiagonal() * q.adjoint();
    inv_sqrt_ = q * root.cwiseInverse().cast<cplx>().asDiagonal() * q.adjoint();
}

MetricFrame MetricFrame::identity(Index n)
{
    return MetricFrame(CMatrix::Identity(n, n), CMatrix::Identity(n, n));
}

MetricFrame MetricFrame::lifted(Index n) const
{
    const CMatrix id = CMatrix::Identity(n, n);
    return MetricFrame(kron(sqrt_, id), kron(inv_sqrt_, id));
}

CMatrix MetricFrame::rotate(const CMatrix& x) const
{
    if (x.rows() != dim() || x.cols() != dim())
        throw DimensionError("MetricFrame::rotate: dimension mismatch");
    return sqrt_ * x * inv_sqrt_;
}

} // namespace ptthermo
