/*
 * oracles.hpp
 *
 * Test-only reference computations. Nothing here calls into the code paths
 * it is used to check: conductance by edge enumeration, dense walk
 * operators built as full matrices, and an LP solved by enumerating basic
 * solutions.
 */

#ifndef LEMON_TESTS_ORACLES_HPP_
#define LEMON_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <lemon/graph.hpp>

namespace oracle {

using Edge = std::pair<lemon::Vertex, lemon::Vertex>;
using Matrix = std::vector<std::vector<double>>; // row-major, rows x cols

/// Erdos-Renyi style edge list over n vertices.
inline std::vector<Edge> random_edges(std::size_t n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (lemon::Vertex u = 0; u < n; ++u)
        for (lemon::Vertex v = u + 1; v < n; ++v)
            if (coin(rng))
                edges.emplace_back(u, v);
    return edges;
}

inline lemon::Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
    return lemon::Graph::from_edges(n, random_edges(n, p, rng));
}

/// Conductance from the raw edge list and a membership mask.
inline double conductance(const std::vector<Edge>& edges, const std::vector<bool>& in) {
    double cut = 0, vol_in = 0, vol_out = 0;
    for (auto [u, v] : edges) {
        if (in[u] != in[v])
            ++cut;
        (in[u] ? vol_in : vol_out) += 1;
        (in[v] ? vol_in : vol_out) += 1;
    }
    return cut / std::min(vol_in, vol_out);
}

/// Dense (A + I) normalized with D = diag(deg + 1).
inline Matrix walk_matrix(const lemon::Graph& g, bool symmetric) {
    const std::size_t n = g.num_vertices();
    Matrix a(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        a[i][i] = 1.0;
    for (auto [u, v] : g.edges()) {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double di = static_cast<double>(g.degree(static_cast<lemon::Vertex>(i)) + 1);
            const double dj = static_cast<double>(g.degree(static_cast<lemon::Vertex>(j)) + 1);
            a[i][j] = symmetric ? a[i][j] / std::sqrt(di * dj) : a[i][j] / dj;
        }
    }
    return a;
}

inline std::vector<double> multiply(const Matrix& a, const std::vector<double>& x) {
    std::vector<double> y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            y[i] += a[i][j] * x[j];
    return y;
}

/// Residual norm of b after projection onto the column space of `cols`
/// (each entry a column), by normal equations via classical Gram-Schmidt in
/// long double.
inline double projection_residual(const std::vector<std::vector<double>>& cols, const std::vector<double>& b) {
    std::vector<std::vector<long double>> q;
    for (const auto& c : cols) {
        std::vector<long double> w(c.begin(), c.end());
        for (int pass = 0; pass < 3; ++pass)
            for (const auto& qq : q) {
                long double r = 0;
                for (std::size_t i = 0; i < w.size(); ++i)
                    r += qq[i] * w[i];
                for (std::size_t i = 0; i < w.size(); ++i)
                    w[i] -= r * qq[i];
            }
        long double nrm = 0;
        for (auto x : w)
            nrm += x * x;
        nrm = std::sqrt(nrm);
        if (nrm < 1e-13L)
            continue;
        for (auto& x : w)
            x /= nrm;
        q.push_back(std::move(w));
    }
    std::vector<long double> r(b.begin(), b.end());
    for (const auto& qq : q) {
        long double d = 0;
        for (std::size_t i = 0; i < r.size(); ++i)
            d += qq[i] * r[i];
        for (std::size_t i = 0; i < r.size(); ++i)
            r[i] -= d * qq[i];
    }
    long double nrm = 0;
    for (auto x : r)
        nrm += x * x;
    return static_cast<double>(std::sqrt(nrm));
}

struct LpOracleResult {
    bool feasible = false;
    double objective = std::numeric_limits<double>::infinity();
};

/// min sum_i (V x)_i  s.t. (V x)_i >= b_i, by enumerating every d-subset of
/// constraints as an active set. `v` is n x d row-major.
inline LpOracleResult lp_by_enumeration(const Matrix& v, const std::vector<double>& b) {
    const std::size_t n = v.size();
    const std::size_t d = v.front().size();
    LpOracleResult best;
    std::vector<std::size_t> idx(d);
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(d), true);
    std::sort(mask.begin(), mask.end(), std::greater<>());
    do {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i])
                idx[k++] = i;
        // Gaussian elimination on the d x d active system
        Matrix a(d, std::vector<double>(d + 1));
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c)
                a[r][c] = v[idx[r]][c];
            a[r][d] = b[idx[r]];
        }
        bool singular = false;
        for (std::size_t c = 0; c < d && !singular; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < d; ++r)
                if (std::abs(a[r][c]) > std::abs(a[p][c]))
                    p = r;
            if (std::abs(a[p][c]) < 1e-12) {
                singular = true;
                break;
            }
            std::swap(a[p], a[c]);
            for (std::size_t r = 0; r < d; ++r) {
                if (r == c)
                    continue;
                const double f = a[r][c] / a[c][c];
                for (std::size_t cc = c; cc <= d; ++cc)
                    a[r][cc] -= f * a[c][cc];
            }
        }
        if (singular)
            continue;
        std::vector<double> x(d);
        for (std::size_t r = 0; r < d; ++r)
            x[r] = a[r][d] / a[r][r];
        bool ok = true;
        double obj = 0.0;
        for (std::size_t i = 0; i < n && ok; ++i) {
            double y = 0.0;
            for (std::size_t c = 0; c < d; ++c)
                y += v[i][c] * x[c];
            ok = y >= b[i] - 1e-9;
            obj += y;
        }
        if (ok) {
            best.feasible = true;
            best.objective = std::min(best.objective, obj);
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return best;
}

} // namespace oracle

#endif // LEMON_TESTS_ORACLES_HPP_
