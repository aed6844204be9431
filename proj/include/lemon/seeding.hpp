/*
 * seeding.hpp
 *
 * Seed selection inside a known community for benchmark runs: degree tiers,
 * triangles, uniform sampling and inward-edge-ratio tiers.
 */

#ifndef LEMON_SEEDING_HPP_
#define LEMON_SEEDING_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <lemon/graph.hpp>

namespace lemon {

enum class SeedStrategy { high_degree, low_degree, triangle, random, high_inward_ratio };

inline std::string_view to_string(SeedStrategy s) {
    switch (s) {
    case SeedStrategy::high_degree: return "high_degree";
    case SeedStrategy::low_degree: return "low_degree";
    case SeedStrategy::triangle: return "triangle";
    case SeedStrategy::random: return "random";
    case SeedStrategy::high_inward_ratio: return "high_inward_ratio";
    }
    return "unknown";
}

inline SeedStrategy parse_seed_strategy(std::string_view name) {
    for (auto s : {SeedStrategy::high_degree, SeedStrategy::low_degree, SeedStrategy::triangle,
                   SeedStrategy::random, SeedStrategy::high_inward_ratio})
        if (to_string(s) == name)
            return s;
    throw std::invalid_argument("unknown seed strategy '" + std::string(name) + "'");
}

struct SeedCount {
    std::size_t value = 3;
};
struct SeedRatio {
    double value = 0.08;
};

struct SeedSpec {
    SeedStrategy strategy = SeedStrategy::random;
    std::variant<SeedCount, SeedRatio> count = SeedCount{};
    std::uint64_t rng_seed = 0;

    /// Number of seeds for a community of the given size; ratios round to
    /// nearest with a minimum of one.
    std::size_t resolve(std::size_t community_size) const {
        if (const auto* r = std::get_if<SeedRatio>(&count)) {
            if (!(r->value > 0.0 && r->value <= 1.0))
                throw std::invalid_argument("seed ratio must lie in (0, 1]");
            return std::max<std::size_t>(
                1, static_cast<std::size_t>(std::llround(r->value * static_cast<double>(community_size))));
        }
        const auto n = std::get<SeedCount>(count).value;
        if (n < 1)
            throw std::invalid_argument("seed count must be at least 1");
        return n;
    }
};

/// splitmix64 finalizer; derives independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Fraction of v's edges that land inside `community`; 0 for isolated v.
inline double inward_ratio(const Graph& g, const VertexSet& community, Vertex v) {
    const auto deg = g.degree(v);
    if (deg == 0)
        return 0.0;
    std::size_t inside = 0;
    for (Vertex u : g.neighbors(v))
        inside += community.contains(u) ? 1 : 0;
    return static_cast<double>(inside) / static_cast<double>(deg);
}

/// Triangles with all corners in `community`, as sorted triples, up to `cap`.
inline std::vector<std::array<Vertex, 3>> community_triangles(const Graph& g, const VertexSet& community,
                                                              std::size_t cap = 10000) {
    std::vector<std::array<Vertex, 3>> out;
    for (Vertex a : community) {
        for (Vertex b : g.neighbors(a)) {
            if (b <= a || !community.contains(b))
                continue;
            // common neighbours c > b
            auto na = g.neighbors(a);
            auto nb = g.neighbors(b);
            auto ia = std::upper_bound(na.begin(), na.end(), b);
            auto ib = std::upper_bound(nb.begin(), nb.end(), b);
            while (ia != na.end() && ib != nb.end()) {
                if (*ia < *ib) {
                    ++ia;
                } else if (*ib < *ia) {
                    ++ib;
                } else {
                    if (community.contains(*ia)) {
                        out.push_back({a, b, *ia});
                        if (out.size() >= cap)
                            return out;
                    }
                    ++ia;
                    ++ib;
                }
            }
        }
    }
    return out;
}

struct SeedSelection {
    VertexSet seeds;
    bool tier_fallback = false;
};

namespace detail {

/// Top ceil(|C|/3) members under `better`, ids breaking ties.
template <typename Better>
std::vector<Vertex> top_third(const VertexSet& community, Better better) {
    std::vector<Vertex> ranked(community.begin(), community.end());
    std::stable_sort(ranked.begin(), ranked.end(), [&](Vertex a, Vertex b) {
        if (better(a, b))
            return true;
        if (better(b, a))
            return false;
        return a < b;
    });
    ranked.resize((community.size() + 2) / 3);
    return ranked;
}

inline std::vector<Vertex> draw(std::vector<Vertex> pool, std::size_t count, std::mt19937_64& rng) {
    std::vector<Vertex> out;
    out.reserve(count);
    std::sample(pool.begin(), pool.end(), std::back_inserter(out), count, rng);
    return out;
}

} // namespace detail

inline SeedSelection select_seeds(const Graph& g, const VertexSet& truth, const SeedSpec& spec) {
    if (truth.empty())
        throw std::invalid_argument("select_seeds: empty community");
    std::mt19937_64 rng(spec.rng_seed);
    SeedSelection out;

    if (spec.strategy == SeedStrategy::triangle) {
        const auto triangles = community_triangles(g, truth);
        if (triangles.empty())
            throw std::runtime_error("select_seeds: no triangle inside the community");
        std::uniform_int_distribution<std::size_t> pick(0, triangles.size() - 1);
        const auto& t = triangles[pick(rng)];
        out.seeds = VertexSet{t[0], t[1], t[2]};
        return out;
    }

    const std::size_t count = spec.resolve(truth.size());
    if (count > truth.size())
        throw std::invalid_argument("select_seeds: more seeds requested than community members");

    std::vector<Vertex> pool;
    switch (spec.strategy) {
    case SeedStrategy::high_degree:
        pool = detail::top_third(truth, [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
        break;
    case SeedStrategy::low_degree:
        pool = detail::top_third(truth, [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
        break;
    case SeedStrategy::high_inward_ratio:
        pool = detail::top_third(truth, [&](Vertex a, Vertex b) {
            return inward_ratio(g, truth, a) > inward_ratio(g, truth, b);
        });
        break;
    default:
        pool.assign(truth.begin(), truth.end());
        break;
    }
    if (pool.size() < count) {
        out.tier_fallback = true;
        pool.assign(truth.begin(), truth.end());
    }
    out.seeds = VertexSet(detail::draw(std::move(pool), count, rng));
    return out;
}

} // namespace lemon

#endif // LEMON_SEEDING_HPP_
