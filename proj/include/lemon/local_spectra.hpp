/*
 * local_spectra.hpp
 *
 * Orthonormal basis of the span of a few short random-walk vectors started
 * at the seeds, advanced by repeated multiplication with the symmetric walk
 * operator and re-orthonormalization.
 */

#ifndef LEMON_LOCAL_SPECTRA_HPP_
#define LEMON_LOCAL_SPECTRA_HPP_

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include <lemon/graph.hpp>
#include <lemon/random_walk.hpp>

namespace lemon {

/// Column-major dense matrix; columns are vectors over the vertex space.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    std::span<double> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
    std::span<const double> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

    void append_col(std::span<const double> v) {
        if (cols_ == 0 && rows_ == 0)
            rows_ = v.size();
        if (v.size() != rows_)
            throw std::invalid_argument("column length mismatch");
        data_.insert(data_.end(), v.begin(), v.end());
        ++cols_;
    }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Column-orthonormal basis over the vertex ids of one (sub)graph.
struct SpectralBasis {
    DenseMatrix columns;

    std::size_t dim() const noexcept { return columns.cols(); }
    std::size_t num_vertices() const noexcept { return columns.rows(); }

    double row_dot(Vertex v, std::span<const double> x) const {
        double acc = 0.0;
        for (std::size_t c = 0; c < dim(); ++c)
            acc += columns(v, c) * x[c];
        return acc;
    }
};

inline constexpr double kRankTolerance = 1e-12;

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        acc += a[i] * b[i];
    return acc;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

} // namespace detail

/// Columns p_0 .. p_l with p_j = op^j p_0 over the operator's vertex space.
inline DenseMatrix build_span(const WalkOperator& op, const ProbabilityVector& p0, std::size_t l) {
    if (l < 1)
        throw std::invalid_argument("build_span requires l >= 1");
    const std::size_t n = op.graph().num_vertices();
    DenseMatrix span(n, l + 1);
    for (const auto& [v, w] : p0.entries())
        span(v, 0) = w;
    for (std::size_t j = 1; j <= l; ++j)
        op.apply(span.col(j - 1), span.col(j));
    return span;
}

/// Modified Gram-Schmidt with one reorthogonalization pass. Columns whose
/// residual falls below rank_tolerance times the largest input column norm
/// are dropped.
inline SpectralBasis orthonormalize(const DenseMatrix& input, double rank_tolerance = kRankTolerance) {
    double max_norm = 0.0;
    for (std::size_t c = 0; c < input.cols(); ++c)
        max_norm = std::max(max_norm, detail::norm(input.col(c)));
    if (max_norm == 0.0 || !std::isfinite(max_norm))
        throw std::runtime_error("orthonormalize: all columns are numerically zero");

    const double threshold = rank_tolerance * max_norm;
    SpectralBasis basis;
    std::vector<double> work(input.rows());
    for (std::size_t c = 0; c < input.cols(); ++c) {
        auto src = input.col(c);
        work.assign(src.begin(), src.end());
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t q = 0; q < basis.columns.cols(); ++q) {
                auto qc = basis.columns.col(q);
                const double r = detail::dot(qc, work);
                for (std::size_t i = 0; i < work.size(); ++i)
                    work[i] -= r * qc[i];
            }
        }
        const double residual = detail::norm(work);
        if (residual < threshold)
            continue;
        for (double& x : work)
            x /= residual;
        basis.columns.append_col(work);
    }
    if (basis.dim() == 0)
        throw std::runtime_error("orthonormalize: all columns are numerically zero");
    return basis;
}

/// Applies V <- orth(op V) `steps` times.
inline SpectralBasis advance_basis(const WalkOperator& op, SpectralBasis v, std::size_t steps) {
    for (std::size_t step = 0; step < steps; ++step) {
        DenseMatrix next(v.num_vertices(), v.dim());
        for (std::size_t c = 0; c < v.dim(); ++c)
            op.apply(v.columns.col(c), next.col(c));
        v = orthonormalize(next);
    }
    return v;
}

/// Initial span of l walk steps from the seeds, orthonormalized, then
/// advanced k - 1 further steps (k = 1 returns the initial basis).
inline SpectralBasis local_spectra(const WalkOperator& op, const VertexSet& seeds, std::size_t k, std::size_t l,
                                   InitMode init = InitMode::uniform) {
    if (k < 1 || l < 1)
        throw std::invalid_argument("local_spectra requires k >= 1 and l >= 1");
    if (op.mode() != Normalization::symmetric)
        throw std::invalid_argument("local_spectra requires the symmetric walk operator");
    const auto p0 = initial_vector(op.graph(), seeds, init);
    return advance_basis(op, orthonormalize(build_span(op, p0, l)), k - 1);
}

} // namespace lemon

#endif // LEMON_LOCAL_SPECTRA_HPP_
