/*
 * detect.hpp
 *
 * Seed set expansion: local spectra -> minimum one-norm LP -> ranking ->
 * truncation, repeated with a growing seed set. Community size comes either
 * from a conductance sweep over ranked prefixes (automatic mode) or from a
 * known ground-truth size.
 */

#ifndef LEMON_DETECT_HPP_
#define LEMON_DETECT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include <lemon/graph.hpp>
#include <lemon/local_spectra.hpp>
#include <lemon/random_walk.hpp>
#include <lemon/scoring.hpp>
#include <lemon/sparse_lp.hpp>

namespace lemon {

enum class Truncation { automatic, ground_truth };

struct DetectParams {
    std::size_t walk_steps = 3;  // k
    std::size_t dim = 3;         // l
    std::size_t expand_step = 6; // s
    double alpha = 10.0;
    /// Average community size of the graph; with alpha it fixes the sample size.
    std::optional<double> avg_community_size;
    /// Explicit sample size, used when avg_community_size is unknown.
    std::size_t sample_size = 3000;
    /// Defaults to max(|S| + 1, 10).
    std::optional<std::size_t> size_min;
    std::size_t size_max = 100;
    std::size_t max_reseed_iters = 20;
    std::size_t sweep_window = 2;
    InitMode init = InitMode::uniform;
    Truncation truncation = Truncation::automatic;
    SamplerSettings sampler;

    void validate() const {
        if (walk_steps < 1 || dim < 1)
            throw std::invalid_argument("walk steps and dimension must be at least 1");
        if (expand_step < 1)
            throw std::invalid_argument("seed expansion step must be at least 1");
        if (size_min && (*size_min < 1 || *size_min >= size_max))
            throw std::invalid_argument("size bounds must satisfy 1 <= size_min < size_max");
        if (size_max < 2)
            throw std::invalid_argument("size_max must be at least 2");
        if (max_reseed_iters < 1)
            throw std::invalid_argument("max_reseed_iters must be at least 1");
        if (!(alpha > 0.0))
            throw std::invalid_argument("alpha must be positive");
    }

    std::size_t target_sample_size() const {
        if (avg_community_size)
            return static_cast<std::size_t>(std::ceil(alpha * *avg_community_size));
        return sample_size;
    }

    std::size_t effective_size_min(std::size_t seed_count) const {
        if (size_min)
            return *size_min;
        return std::min(std::max<std::size_t>(seed_count + 1, 10), size_max - 1);
    }
};

struct Truncated {
    VertexSet members;
    bool clamped = false;
};

inline Truncated truncate_by_size(std::span<const Vertex> ranked, std::size_t size) {
    if (size == 0)
        throw std::invalid_argument("truncate_by_size: a community cannot be empty");
    Truncated out;
    if (size > ranked.size()) {
        size = ranked.size();
        out.clamped = true;
    }
    out.members = VertexSet(std::vector<Vertex>(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(size)));
    return out;
}

/// Conductance of ranked prefixes of size size_min .. size_max.
struct SweepCurve {
    std::size_t size_min = 0;
    std::vector<double> phi; // phi[i] is the prefix of size size_min + i
    std::optional<std::size_t> argmin_first; // a prefix size

    std::size_t size_max() const { return size_min + phi.size() - 1; }
    double at(std::size_t size) const { return phi.at(size - size_min); }

    /// Size of the smallest prefix reaching the global minimum.
    std::size_t global_argmin() const {
        const auto it = std::min_element(phi.begin(), phi.end());
        return size_min + static_cast<std::size_t>(it - phi.begin());
    }
};

/// Prefixes whose complement has zero volume get phi = 1.
inline SweepCurve sweep_conductance(const Graph& g, std::span<const Vertex> ranked, std::size_t size_min,
                                    std::size_t size_max, std::size_t window = 2) {
    if (size_min < 1 || size_min > size_max || size_max > ranked.size())
        throw std::invalid_argument("sweep_conductance: invalid size range");

    SweepCurve curve;
    curve.size_min = size_min;
    curve.phi.reserve(size_max - size_min + 1);

    const std::uint64_t total = g.total_volume();
    std::unordered_set<Vertex> prefix;
    prefix.reserve(size_max * 2);
    std::uint64_t vol = 0;
    std::int64_t cut = 0;
    for (std::size_t i = 0; i < size_max; ++i) {
        const Vertex v = ranked[i];
        std::int64_t inside = 0;
        for (Vertex u : g.neighbors(v))
            inside += prefix.count(u);
        cut += static_cast<std::int64_t>(g.degree(v)) - 2 * inside;
        vol += g.degree(v);
        prefix.insert(v);
        if (i + 1 < size_min)
            continue;
        const std::uint64_t denom = std::min(vol, total - vol);
        curve.phi.push_back(denom == 0 ? 1.0 : static_cast<double>(cut) / static_cast<double>(denom));
    }

    const auto& phi = curve.phi;
    for (std::size_t i = 1; i + 1 < phi.size(); ++i) {
        if (!(phi[i] < phi[i - 1]))
            continue;
        bool minimal = true;
        for (std::size_t j = i + 1; j <= std::min(i + window, phi.size() - 1); ++j)
            minimal = minimal && phi[i] <= phi[j];
        if (minimal) {
            curve.argmin_first = size_min + i;
            break;
        }
    }
    return curve;
}

/// A sampled region: the subgraph detection runs on, and the graph whose
/// cuts and volumes the sweep measures.
struct LocalRegion {
    const Graph& parent;
    const InducedSubgraph& local;
};

struct StepResult {
    std::vector<Vertex> ranked; // parent ids
    SweepCurve sweep;
    SparseIndicatorSolution lp;

    bool feasible() const { return lp.status == LpStatus::optimal; }
};

/// One pass of spectra -> LP -> ranking -> sweep. `local_seeds` are ids of
/// the region's subgraph.
inline StepResult lemon_step(const LocalRegion& region, const VertexSet& local_seeds, const DetectParams& params,
                             std::size_t size_min, std::size_t size_max) {
    const Graph& sub = region.local.graph;
    const WalkOperator op(sub, Normalization::symmetric);
    const auto basis = local_spectra(op, local_seeds, params.walk_steps, params.dim, params.init);

    StepResult out;
    out.lp = solve_min_one_norm(basis, local_seeds);
    if (!out.feasible())
        return out;

    const auto order = rank_vertices(out.lp);
    out.ranked.reserve(order.size());
    for (Vertex v : order)
        out.ranked.push_back(region.local.to_parent[v]);

    const std::size_t hi = std::min(size_max, out.ranked.size());
    const std::size_t lo = std::min(size_min, hi);
    out.sweep = sweep_conductance(region.parent, out.ranked, lo, hi, params.sweep_window);
    return out;
}

/// Runs one step on a whole graph.
inline StepResult lemon_step(const Graph& g, const VertexSet& seeds, const DetectParams& params) {
    std::vector<Vertex> all(g.num_vertices());
    std::iota(all.begin(), all.end(), Vertex{0});
    const auto whole = induced_subgraph(g, VertexSet(std::move(all)));
    return lemon_step(LocalRegion{g, whole}, seeds, params, params.effective_size_min(seeds.size()),
                      params.size_max);
}

struct GroundTruth {
    std::size_t size = 0;
    std::optional<VertexSet> members; // enables best-F1 selection across iterations
};

struct IterationTrace {
    std::size_t seed_count = 0;
    bool infeasible = false;
    SweepCurve sweep;
    std::size_t candidate_size = 0;
    double phi_min = 1.0;
    std::optional<double> f1;
};

struct CommunityResult {
    VertexSet members;               // internal ids of the input graph
    std::vector<Label> labels;       // members in ranked order, as external labels
    std::vector<double> scores;      // final y for members, ranked order
    std::size_t iterations = 0;
    std::size_t best_iteration = 0;
    std::size_t chosen_size = 0;
    double phi_at_chosen = 1.0;
    std::vector<IterationTrace> trace;
    std::size_t subgraph_size = 0;

    bool infeasible_lp = false;
    bool sampler_warning = false;
    bool size_clamped = false;
    bool no_relative_minimum = false;
    bool seeds_missing = false;

    bool clean() const { return !infeasible_lp && !sampler_warning && !size_clamped; }
};

/// Full detection from a seed set of `g`.
inline CommunityResult detect(const Graph& g, const VertexSet& seeds, const DetectParams& params,
                              const std::optional<GroundTruth>& truth = std::nullopt) {
    params.validate();
    if (seeds.empty())
        throw std::invalid_argument("detect requires a nonempty seed set");
    for (Vertex s : seeds)
        if (s >= g.num_vertices())
            throw std::out_of_range("seed outside the graph");
    if (params.truncation == Truncation::ground_truth && (!truth || truth->size == 0))
        throw std::invalid_argument("ground-truth truncation requires a truth size");

    CommunityResult result;
    const auto sample = sample_subgraph(g, seeds, params.target_sample_size(), params.sampler);
    result.sampler_warning = sample.stalled;
    result.subgraph_size = sample.vertices.size();
    const LocalRegion region{g, sample.sub};

    const auto to_local = [&](const VertexSet& parent_ids) {
        std::vector<Vertex> ids;
        ids.reserve(parent_ids.size());
        for (Vertex v : parent_ids)
            ids.push_back(*sample.sub.local_id(v));
        return VertexSet(std::move(ids));
    };

    const bool automatic = params.truncation == Truncation::automatic;
    const std::size_t size_min = params.effective_size_min(seeds.size());
    const std::size_t size_max = params.size_max;

    VertexSet current = seeds;
    std::vector<StepResult> steps;
    for (std::size_t iter = 0; iter < params.max_reseed_iters; ++iter) {
        StepResult step = lemon_step(region, to_local(current), params, size_min, size_max);
        IterationTrace t;
        t.seed_count = current.size();
        if (!step.feasible()) {
            t.infeasible = true;
            result.trace.push_back(std::move(t));
            steps.push_back(std::move(step));
            break;
        }
        t.sweep = step.sweep;
        if (automatic) {
            t.candidate_size = step.sweep.argmin_first.value_or(step.sweep.global_argmin());
            t.phi_min = step.sweep.at(t.candidate_size);
        } else {
            t.candidate_size = std::min(truth->size, step.ranked.size());
            const auto members = truncate_by_size(step.ranked, t.candidate_size).members;
            t.phi_min = (members.size() < g.num_vertices() && volume(g, members) > 0)
                            ? conductance(g, members)
                            : 1.0;
            if (truth->members)
                t.f1 = f1_score(members, *truth->members).f1;
        }
        const bool upturn = automatic && !result.trace.empty() && !result.trace.back().infeasible &&
                            t.phi_min > result.trace.back().phi_min;
        result.trace.push_back(t);
        steps.push_back(std::move(step));
        if (upturn)
            break;

        // next seed set: original seeds plus the top t = s * (iter + 1) ranked non-seeds
        const std::size_t take = params.expand_step * (iter + 1);
        std::vector<Vertex> grown(seeds.begin(), seeds.end());
        for (Vertex v : steps.back().ranked) {
            if (grown.size() >= seeds.size() + take)
                break;
            if (!seeds.contains(v))
                grown.push_back(v);
        }
        VertexSet next(std::move(grown));
        if (next.size() <= current.size())
            break;
        if (automatic && next.size() >= size_max)
            break;
        if (!automatic && next.size() > truth->size)
            break;
        current = std::move(next);
    }
    result.iterations = result.trace.size();

    // pick the iteration to report
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < result.trace.size(); ++i) {
        const auto& t = result.trace[i];
        if (t.infeasible)
            continue;
        if (!best) {
            best = i;
            continue;
        }
        const auto& b = result.trace[*best];
        const bool better = (t.f1 && b.f1) ? *t.f1 > *b.f1 : t.phi_min < b.phi_min;
        if (better)
            best = i;
    }
    if (!best) {
        result.infeasible_lp = true;
        return result;
    }
    result.infeasible_lp = result.trace.back().infeasible;
    result.best_iteration = *best;

    const auto& chosen = result.trace[*best];
    const auto& step = steps[*best];
    const auto cut = truncate_by_size(step.ranked, chosen.candidate_size);
    result.size_clamped = !automatic && chosen.candidate_size < truth->size;
    result.no_relative_minimum = automatic && !step.sweep.argmin_first;
    result.members = cut.members;
    result.chosen_size = cut.members.size();
    result.phi_at_chosen = chosen.phi_min;
    for (std::size_t i = 0; i < result.chosen_size; ++i) {
        const Vertex v = step.ranked[i];
        result.labels.push_back(g.label(v));
        result.scores.push_back(step.lp.y[*sample.sub.local_id(v)]);
    }
    for (Vertex s : seeds)
        result.seeds_missing = result.seeds_missing || !result.members.contains(s);
    return result;
}

} // namespace lemon

#endif // LEMON_DETECT_HPP_
