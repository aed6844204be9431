/*
 * synth.hpp
 *
 * Planted-partition generator: equal-size disjoint blocks, independent
 * edges with probability p_in inside a block and p_out between blocks.
 */

#ifndef LEMON_SYNTH_HPP_
#define LEMON_SYNTH_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <lemon/graph.hpp>

namespace lemon {

struct PlantedSpec {
    std::size_t num_communities = 10;
    std::size_t community_size = 20;
    double p_in = 0.5;
    double p_out = 0.01;
    std::uint64_t rng_seed = 1;

    void validate() const {
        if (num_communities < 1)
            throw std::invalid_argument("planted partition needs at least one community");
        if (community_size < 3)
            throw std::invalid_argument("community size must be at least 3");
        if (!(0.0 <= p_out && p_out < p_in && p_in <= 1.0))
            throw std::invalid_argument("probabilities must satisfy 0 <= p_out < p_in <= 1");
    }
};

struct PlantedInstance {
    Graph graph;
    GroundTruthCatalog truth;
    std::size_t reconnected = 0; // isolated vertices given an intra-block edge
};

inline PlantedInstance generate_planted(const PlantedSpec& spec) {
    spec.validate();
    const std::size_t n = spec.num_communities * spec.community_size;
    std::mt19937_64 rng(spec.rng_seed);
    std::bernoulli_distribution inside(spec.p_in);
    std::bernoulli_distribution across(spec.p_out);

    std::vector<std::pair<Vertex, Vertex>> edges;
    std::vector<std::size_t> degree(n, 0);
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            const bool same = u / spec.community_size == v / spec.community_size;
            if (same ? inside(rng) : across(rng)) {
                edges.emplace_back(u, v);
                ++degree[u];
                ++degree[v];
            }
        }
    }

    PlantedInstance out;
    std::uniform_int_distribution<std::size_t> offset(1, spec.community_size - 1);
    for (Vertex u = 0; u < n; ++u) {
        if (degree[u] != 0)
            continue;
        const std::size_t block = u / spec.community_size;
        const std::size_t pos = u % spec.community_size;
        const auto v = static_cast<Vertex>(block * spec.community_size + (pos + offset(rng)) % spec.community_size);
        edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
        ++out.reconnected;
    }

    out.graph = Graph::from_edges(n, edges);
    for (std::size_t b = 0; b < spec.num_communities; ++b) {
        std::vector<Vertex> block(spec.community_size);
        for (std::size_t i = 0; i < spec.community_size; ++i)
            block[i] = static_cast<Vertex>(b * spec.community_size + i);
        out.truth.communities.emplace_back(std::move(block));
    }
    out.truth.avg_size = static_cast<double>(spec.community_size);
    return out;
}

} // namespace lemon

#endif // LEMON_SYNTH_HPP_
