/*
 * random_walk.hpp
 *
 * Walk operators built on A + I, seed-dependent starting distributions and
 * the random-walk subgraph sampler.
 */

#ifndef LEMON_RANDOM_WALK_HPP_
#define LEMON_RANDOM_WALK_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include <lemon/graph.hpp>

namespace lemon {

inline constexpr double kSupportEpsilon = 1e-12;

/// Sparse non-negative vertex weights, kept sorted by vertex id.
class ProbabilityVector {
public:
    using Entry = std::pair<Vertex, double>;

    ProbabilityVector() = default;
    explicit ProbabilityVector(std::vector<Entry> entries) : entries_(std::move(entries)) {
        std::sort(entries_.begin(), entries_.end(),
                  [](const Entry& a, const Entry& b) { return a.first < b.first; });
    }

    std::span<const Entry> entries() const noexcept { return entries_; }

    double operator[](Vertex v) const {
        auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                                   [](const Entry& e, Vertex key) { return e.first < key; });
        return (it != entries_.end() && it->first == v) ? it->second : 0.0;
    }

    std::size_t support(double epsilon = kSupportEpsilon) const {
        return static_cast<std::size_t>(std::count_if(
            entries_.begin(), entries_.end(), [epsilon](const Entry& e) { return e.second > epsilon; }));
    }

    double total() const {
        double sum = 0.0;
        for (const auto& e : entries_)
            sum += e.second;
        return sum;
    }

    std::vector<double> to_dense(std::size_t n) const {
        std::vector<double> out(n, 0.0);
        for (const auto& [v, w] : entries_)
            out[v] = w;
        return out;
    }

private:
    std::vector<Entry> entries_;
};

enum class Normalization {
    symmetric,  // D^-1/2 (A+I) D^-1/2
    stochastic, // (A+I) D^-1, column-stochastic
};

enum class InitMode { uniform, degree_weighted };

/// Read-only view applying a normalized A + I with D = diag(deg + 1).
class WalkOperator {
public:
    WalkOperator(const Graph& g, Normalization mode) : g_(&g), mode_(mode) {}

    const Graph& graph() const noexcept { return *g_; }
    Normalization mode() const noexcept { return mode_; }

    double augmented_degree(Vertex v) const { return static_cast<double>(g_->degree(v) + 1); }

    /// Dense product out = op * in; `out` must not alias `in`.
    void apply(std::span<const double> in, std::span<double> out) const {
        const auto n = static_cast<Vertex>(g_->num_vertices());
        if (mode_ == Normalization::symmetric) {
            for (Vertex i = 0; i < n; ++i) {
                const double di = augmented_degree(i);
                double acc = in[i] / di;
                for (Vertex j : g_->neighbors(i))
                    acc += in[j] / std::sqrt(di * augmented_degree(j));
                out[i] = acc;
            }
        } else {
            for (Vertex i = 0; i < n; ++i) {
                double acc = in[i] / augmented_degree(i);
                for (Vertex j : g_->neighbors(i))
                    acc += in[j] / augmented_degree(j);
                out[i] = acc;
            }
        }
    }

    double weight(Vertex to, Vertex from) const {
        if (mode_ == Normalization::symmetric)
            return 1.0 / std::sqrt(augmented_degree(to) * augmented_degree(from));
        return 1.0 / augmented_degree(from);
    }

private:
    const Graph* g_;
    Normalization mode_;
};

inline ProbabilityVector initial_vector(const Graph& g, const VertexSet& seeds, InitMode mode) {
    if (seeds.empty())
        throw std::invalid_argument("initial_vector requires a nonempty seed set");
    std::vector<ProbabilityVector::Entry> entries;
    entries.reserve(seeds.size());
    if (mode == InitMode::uniform) {
        const double w = 1.0 / static_cast<double>(seeds.size());
        for (Vertex v : seeds)
            entries.emplace_back(v, w);
    } else {
        const auto vol = volume(g, seeds);
        if (vol == 0) {
            // all seeds isolated: degree weights are undefined
            return initial_vector(g, seeds, InitMode::uniform);
        }
        for (Vertex v : seeds)
            entries.emplace_back(v, static_cast<double>(g.degree(v)) / static_cast<double>(vol));
    }
    return ProbabilityVector(std::move(entries));
}

/// Sparse product op * p touching only the closed neighbourhood of the
/// support of p.
inline ProbabilityVector propagate(const WalkOperator& op, const ProbabilityVector& p) {
    const Graph& g = op.graph();
    std::unordered_map<Vertex, double> acc;
    acc.reserve(p.entries().size() * 4);
    for (const auto& [v, w] : p.entries()) {
        if (w == 0.0)
            continue;
        acc[v] += w * op.weight(v, v);
        for (Vertex u : g.neighbors(v))
            acc[u] += w * op.weight(u, v);
    }
    return ProbabilityVector(std::vector<ProbabilityVector::Entry>(acc.begin(), acc.end()));
}

struct SamplerSettings {
    std::size_t max_steps = 30;
    double hard_cap_factor = 5.0;
};

struct SampledSubgraph {
    InducedSubgraph sub;
    VertexSet vertices; // parent ids
    std::size_t steps = 0;
    bool stalled = false; // walk saturated its component before reaching the target
};

/// Spreads a uniform walk from the seeds with the stochastic operator until
/// at least `target_size` vertices carry probability, then keeps the most
/// probable vertices (plus every seed) and induces a subgraph on them.
inline SampledSubgraph sample_subgraph(const Graph& g, const VertexSet& seeds, std::size_t target_size,
                                       const SamplerSettings& settings = {}) {
    if (seeds.empty())
        throw std::invalid_argument("sample_subgraph requires a nonempty seed set");
    target_size = std::max(target_size, seeds.size());

    const WalkOperator op(g, Normalization::stochastic);
    ProbabilityVector p = initial_vector(g, seeds, InitMode::uniform);
    SampledSubgraph out;
    std::size_t support = p.support();
    while (support < target_size && out.steps < settings.max_steps) {
        ProbabilityVector next = propagate(op, p);
        const std::size_t grown = next.support();
        p = std::move(next);
        ++out.steps;
        if (grown == support) {
            out.stalled = true;
            break;
        }
        support = grown;
    }

    std::vector<ProbabilityVector::Entry> ranked;
    ranked.reserve(p.entries().size());
    for (const auto& e : p.entries())
        if (e.second > kSupportEpsilon || seeds.contains(e.first))
            ranked.push_back(e);
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second > b.second || (a.second == b.second && a.first < b.first);
    });

    const auto cap = std::max<std::size_t>(
        seeds.size(), static_cast<std::size_t>(settings.hard_cap_factor * static_cast<double>(target_size)));
    std::vector<Vertex> keep(seeds.begin(), seeds.end());
    for (const auto& [v, w] : ranked) {
        if (keep.size() >= cap)
            break;
        if (!seeds.contains(v))
            keep.push_back(v);
    }
    out.vertices = VertexSet(std::move(keep));
    out.sub = induced_subgraph(g, out.vertices);
    return out;
}

} // namespace lemon

#endif // LEMON_RANDOM_WALK_HPP_
