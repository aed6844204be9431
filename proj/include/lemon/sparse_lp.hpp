/*
 * sparse_lp.hpp
 *
 * Minimum one-norm vector in the span of a spectral basis:
 *
 *     min  sum(y)   s.t.  y = V x,  y >= 0,  y(S) >= 1.
 *
 * With x as the only unknown this has d = dim(V) free variables and one
 * inequality row per vertex. We run a dense primal simplex (Bland's rule)
 * on its LP dual
 *
 *     max  b . lambda   s.t.  sum_i lambda_i V_i = V^T e,  lambda >= 0,
 *
 * which has only d equality rows, and read x off the optimal basis.
 */

#ifndef LEMON_SPARSE_LP_HPP_
#define LEMON_SPARSE_LP_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include <lemon/graph.hpp>
#include <lemon/local_spectra.hpp>

namespace lemon {

enum class LpStatus { optimal, infeasible };

struct SparseIndicatorSolution {
    std::vector<double> y; // one score per basis row
    std::vector<double> x; // basis coordinates
    double objective = 0.0;
    LpStatus status = LpStatus::infeasible;
    std::size_t pivots = 0;
};

struct LpSettings {
    double seed_bound = 1.0;
    double pivot_tolerance = 1e-10;
    double feasibility_tolerance = 1e-9;
};

namespace detail {

/// Solves the square system M z = rhs (row-major M) with partial pivoting.
inline std::optional<std::vector<double>> solve_square(std::vector<double> m, std::vector<double> rhs) {
    const std::size_t d = rhs.size();
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < d; ++r)
            if (std::abs(m[r * d + col]) > std::abs(m[piv * d + col]))
                piv = r;
        if (std::abs(m[piv * d + col]) < 1e-14)
            return std::nullopt;
        if (piv != col) {
            for (std::size_t c = 0; c < d; ++c)
                std::swap(m[piv * d + c], m[col * d + c]);
            std::swap(rhs[piv], rhs[col]);
        }
        for (std::size_t r = col + 1; r < d; ++r) {
            const double f = m[r * d + col] / m[col * d + col];
            if (f == 0.0)
                continue;
            for (std::size_t c = col; c < d; ++c)
                m[r * d + c] -= f * m[col * d + c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> z(d);
    for (std::size_t r = d; r-- > 0;) {
        double acc = rhs[r];
        for (std::size_t c = r + 1; c < d; ++c)
            acc -= m[r * d + c] * z[c];
        z[r] = acc / m[r * d + r];
    }
    return z;
}

/// Dense tableau for  min cost . w  s.t.  T w = rhs, w >= 0  over d rows.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0), rhs_(rows, 0.0),
                                                  reduced_(cols, 0.0), basis_(rows, 0) {}

    double& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    double& rhs(std::size_t r) { return rhs_[r]; }
    std::vector<std::size_t>& basis() { return basis_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    void set_costs(const std::vector<double>& cost) {
        cost_ = cost;
        for (std::size_t c = 0; c < cols_; ++c) {
            double z = cost_[c];
            for (std::size_t r = 0; r < rows_; ++r)
                z -= cost_[basis_[r]] * at(r, c);
            reduced_[c] = z;
        }
    }

    double objective() const {
        double z = 0.0;
        for (std::size_t r = 0; r < rows_; ++r)
            z += cost_[basis_[r]] * rhs_[r];
        return z;
    }

    void pivot(std::size_t pr, std::size_t pc) {
        const double p = at(pr, pc);
        for (std::size_t c = 0; c < cols_; ++c)
            at(pr, c) /= p;
        rhs_[pr] /= p;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == pr)
                continue;
            const double f = at(r, pc);
            if (f == 0.0)
                continue;
            for (std::size_t c = 0; c < cols_; ++c)
                at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
            rhs_[r] -= f * rhs_[pr];
            if (rhs_[r] < 0.0 && rhs_[r] > -1e-13)
                rhs_[r] = 0.0;
        }
        const double f = reduced_[pc];
        if (f != 0.0) {
            for (std::size_t c = 0; c < cols_; ++c)
                reduced_[c] -= f * at(pr, c);
            reduced_[pc] = 0.0;
        }
        basis_[pr] = pc;
    }

    enum class Outcome { optimal, unbounded };

    /// Bland's rule: lowest-index improving column, lowest basic index on
    /// ratio ties. Columns >= `allowed` never enter.
    Outcome run(std::size_t allowed, double tol, std::size_t& pivots, std::size_t max_pivots) {
        while (true) {
            std::size_t enter = allowed;
            for (std::size_t c = 0; c < allowed; ++c) {
                if (reduced_[c] < -tol) {
                    enter = c;
                    break;
                }
            }
            if (enter == allowed)
                return Outcome::optimal;

            std::size_t leave = rows_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < rows_; ++r) {
                const double a = at(r, enter);
                if (a <= tol)
                    continue;
                const double ratio = std::max(rhs_[r], 0.0) / a;
                if (ratio < best - 1e-15 ||
                    (ratio <= best + 1e-15 && leave < rows_ && basis_[r] < basis_[leave])) {
                    best = std::min(best, ratio);
                    leave = r;
                }
            }
            if (leave == rows_)
                return Outcome::unbounded;
            pivot(leave, enter);
            if (++pivots > max_pivots)
                throw std::runtime_error("simplex pivot limit exceeded");
        }
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> a_;
    std::vector<double> rhs_;
    std::vector<double> cost_;
    std::vector<double> reduced_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

/// Globally optimal solution of the seed-constrained minimum one-norm LP.
/// `seeds` are row indices of `basis`.
inline SparseIndicatorSolution solve_min_one_norm(const SpectralBasis& basis, const VertexSet& seeds,
                                                  const LpSettings& settings = {}) {
    const std::size_t n = basis.num_vertices();
    const std::size_t d = basis.dim();
    if (d == 0)
        throw std::invalid_argument("solve_min_one_norm: empty basis");
    if (seeds.empty())
        throw std::invalid_argument("solve_min_one_norm: empty seed set");
    for (Vertex s : seeds)
        if (s >= n)
            throw std::out_of_range("solve_min_one_norm: seed outside the basis vertex space");

    SparseIndicatorSolution sol;
    for (Vertex s : seeds) {
        double row_norm = 0.0;
        for (std::size_t c = 0; c < d; ++c)
            row_norm = std::max(row_norm, std::abs(basis.columns(s, c)));
        if (row_norm == 0.0)
            return sol; // 0 >= 1 cannot hold
    }

    std::vector<double> bound(n, 0.0);
    for (Vertex s : seeds)
        bound[s] = settings.seed_bound;

    // objective gradient of the reduced problem: c = V^T e
    std::vector<double> grad(d, 0.0);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t i = 0; i < n; ++i)
            grad[c] += basis.columns(i, c);

    // dual equality rows r: sum_i V(i, r) lambda_i + sign * artificial_r = |grad_r|
    detail::Tableau tab(d, n + d);
    for (std::size_t r = 0; r < d; ++r) {
        const double sign = grad[r] < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i)
            tab.at(r, i) = sign * basis.columns(i, r);
        tab.at(r, n + r) = 1.0;
        tab.rhs(r) = sign * grad[r];
        tab.basis()[r] = n + r;
    }

    const double tol = settings.pivot_tolerance;
    const std::size_t max_pivots = 50 * (n + d) + 1000;

    std::vector<double> phase1(n + d, 0.0);
    std::fill(phase1.begin() + static_cast<std::ptrdiff_t>(n), phase1.end(), 1.0);
    tab.set_costs(phase1);
    tab.run(n + d, tol, sol.pivots, max_pivots);
    double scale = 1.0;
    for (double g : grad)
        scale = std::max(scale, std::abs(g));
    if (tab.objective() > 1e-8 * scale)
        throw std::runtime_error("solve_min_one_norm: dual phase I failed to reach feasibility");

    // drive zero-valued artificials out of the basis
    for (std::size_t r = 0; r < d; ++r) {
        if (tab.basis()[r] < n)
            continue;
        std::size_t best = n;
        double mag = tol;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(tab.at(r, i)) > mag) {
                mag = std::abs(tab.at(r, i));
                best = i;
            }
        }
        if (best == n)
            throw std::runtime_error("solve_min_one_norm: basis columns are linearly dependent");
        tab.pivot(r, best);
    }

    std::vector<double> phase2(n + d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        phase2[i] = -bound[i];
    tab.set_costs(phase2);
    if (tab.run(n, tol, sol.pivots, max_pivots) == detail::Tableau::Outcome::unbounded)
        return sol; // dual unbounded: primal infeasible

    // x satisfies the basic rows with equality
    std::vector<double> m(d * d);
    std::vector<double> rhs(d);
    for (std::size_t r = 0; r < d; ++r) {
        const std::size_t row = tab.basis()[r];
        for (std::size_t c = 0; c < d; ++c)
            m[r * d + c] = basis.columns(row, c);
        rhs[r] = bound[row];
    }
    auto x = detail::solve_square(std::move(m), std::move(rhs));
    if (!x)
        throw std::runtime_error("solve_min_one_norm: singular optimal basis");

    sol.x = std::move(*x);
    sol.y.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        sol.y[i] = basis.row_dot(static_cast<Vertex>(i), sol.x);
    sol.objective = 0.0;
    for (std::size_t c = 0; c < d; ++c)
        sol.objective += grad[c] * sol.x[c];
    sol.status = LpStatus::optimal;

    const double ftol = settings.feasibility_tolerance * std::max(1.0, settings.seed_bound);
    for (std::size_t i = 0; i < n; ++i)
        if (sol.y[i] < bound[i] - ftol)
            throw std::logic_error("solve_min_one_norm: solution violates a constraint");
    return sol;
}

/// Vertices ordered by score, highest first; ties by ascending id.
inline std::vector<Vertex> rank_vertices(const SparseIndicatorSolution& sol) {
    if (sol.status != LpStatus::optimal)
        throw std::invalid_argument("rank_vertices requires an optimal solution");
    std::vector<Vertex> order(sol.y.size());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
        if (sol.y[a] != sol.y[b])
            return sol.y[a] > sol.y[b];
        return a < b;
    });
    return order;
}

} // namespace lemon

#endif // LEMON_SPARSE_LP_HPP_
