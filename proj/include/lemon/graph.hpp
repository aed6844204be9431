/*
 * graph.hpp
 *
 * Immutable undirected simple graph in compressed adjacency form, the
 * SNAP-style edge-list / community readers, and the set primitives used by
 * the sweep (volume, cut, conductance).
 */

#ifndef LEMON_GRAPH_HPP_
#define LEMON_GRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lemon {

using Vertex = std::uint32_t;
using Label = std::int64_t;

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Sorted, duplicate-free set of internal vertex ids.
class VertexSet {
public:
    VertexSet() = default;

    explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

    bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }
    auto begin() const noexcept { return ids_.begin(); }
    auto end() const noexcept { return ids_.end(); }
    Vertex operator[](std::size_t i) const { return ids_[i]; }
    const std::vector<Vertex>& ids() const noexcept { return ids_; }

    std::size_t intersection_size(const VertexSet& other) const {
        std::size_t count = 0;
        auto a = ids_.begin();
        auto b = other.ids_.begin();
        while (a != ids_.end() && b != other.ids_.end()) {
            if (*a < *b) {
                ++a;
            } else if (*b < *a) {
                ++b;
            } else {
                ++count;
                ++a;
                ++b;
            }
        }
        return count;
    }

    VertexSet united(const VertexSet& other) const {
        std::vector<Vertex> out;
        out.reserve(ids_.size() + other.ids_.size());
        std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                       std::back_inserter(out));
        return VertexSet(std::move(out));
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

private:
    std::vector<Vertex> ids_;
};

class Graph {
public:
    Graph() = default;

    /// Builds from an undirected edge list over [0, n). Self-loops and
    /// repeated edges are dropped; the number dropped is kept in
    /// dropped_edges(). An empty `labels` means labels equal internal ids.
    static Graph from_edges(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges,
                            std::vector<Label> labels = {}) {
        if (!labels.empty() && labels.size() != n)
            throw std::invalid_argument("label count does not match vertex count");

        std::vector<std::pair<Vertex, Vertex>> arcs;
        arcs.reserve(2 * edges.size());
        std::size_t loops = 0;
        for (auto [u, v] : edges) {
            if (u >= n || v >= n)
                throw std::out_of_range("edge endpoint outside [0, n)");
            if (u == v) {
                ++loops;
                continue;
            }
            arcs.emplace_back(u, v);
            arcs.emplace_back(v, u);
        }
        std::sort(arcs.begin(), arcs.end());
        const std::size_t before = arcs.size();
        arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

        Graph g;
        g.offsets_.assign(n + 1, 0);
        for (auto [u, v] : arcs)
            ++g.offsets_[u + 1];
        std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
        g.neighbors_.reserve(arcs.size());
        for (auto [u, v] : arcs)
            g.neighbors_.push_back(v);
        g.dropped_ = loops + (before - arcs.size()) / 2;

        if (labels.empty()) {
            labels.resize(n);
            std::iota(labels.begin(), labels.end(), Label{0});
        }
        g.labels_ = std::move(labels);
        g.index_.reserve(n);
        for (Vertex v = 0; v < n; ++v)
            g.index_.emplace(g.labels_[v], v);
        return g;
    }

    std::size_t num_vertices() const noexcept { return labels_.size(); }
    std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }
    std::uint64_t total_volume() const noexcept { return neighbors_.size(); }
    std::size_t dropped_edges() const noexcept { return dropped_; }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }

    bool has_edge(Vertex u, Vertex v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    Label label(Vertex v) const { return labels_[v]; }
    const std::vector<Label>& labels() const noexcept { return labels_; }

    std::optional<Vertex> find(Label label) const {
        auto it = index_.find(label);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    /// Edges with u < v, in adjacency order.
    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(num_edges());
        for (Vertex u = 0; u < num_vertices(); ++u)
            for (Vertex v : neighbors(u))
                if (u < v)
                    out.emplace_back(u, v);
        return out;
    }

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<Vertex> neighbors_;
    std::vector<Label> labels_;
    std::unordered_map<Label, Vertex> index_;
    std::size_t dropped_ = 0;
};

struct GroundTruthCatalog {
    std::vector<VertexSet> communities;
    double avg_size = 0.0;
    std::size_t dropped_members = 0;
    std::size_t dropped_communities = 0;
};

namespace detail {

inline bool is_blank_or_comment(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#' || line[pos] == '%';
}

inline Label parse_label(const std::string& token, std::size_t lineno) {
    std::size_t used = 0;
    Label value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        throw ParseError(lineno, "non-integer vertex label '" + token + "'");
    }
    if (used != token.size())
        throw ParseError(lineno, "non-integer vertex label '" + token + "'");
    return value;
}

} // namespace detail

/// Reads a whitespace-separated "u v" edge list ('#' and '%' lines are
/// comments). Labels are remapped to dense ids in ascending label order, so
/// the result does not depend on line order or endpoint order.
inline Graph load_edge_list(std::istream& in) {
    std::vector<std::pair<Label, Label>> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line))
            continue;
        std::istringstream fields(line);
        std::string a, b, extra;
        if (!(fields >> a >> b))
            throw ParseError(lineno, "expected two vertex labels");
        raw.emplace_back(detail::parse_label(a, lineno), detail::parse_label(b, lineno));
    }
    if (raw.empty())
        throw std::runtime_error("edge list contains no edges");

    std::vector<Label> labels;
    labels.reserve(2 * raw.size());
    for (auto [a, b] : raw) {
        labels.push_back(a);
        labels.push_back(b);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

    std::unordered_map<Label, Vertex> index;
    index.reserve(labels.size());
    for (Vertex v = 0; v < labels.size(); ++v)
        index.emplace(labels[v], v);

    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(raw.size());
    for (auto [a, b] : raw)
        edges.emplace_back(index.at(a), index.at(b));
    const std::size_t n = labels.size();
    return Graph::from_edges(n, edges, std::move(labels));
}

/// One community per line. Labels unknown to `g` are skipped; communities
/// left empty are dropped. Both are counted in the catalog.
inline GroundTruthCatalog load_communities(std::istream& in, const Graph& g) {
    GroundTruthCatalog catalog;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::is_blank_or_comment(line))
            continue;
        std::istringstream fields(line);
        std::vector<Vertex> members;
        std::string token;
        while (fields >> token) {
            if (auto v = g.find(detail::parse_label(token, lineno)))
                members.push_back(*v);
            else
                ++catalog.dropped_members;
        }
        if (members.empty()) {
            ++catalog.dropped_communities;
            continue;
        }
        catalog.communities.emplace_back(std::move(members));
    }
    if (catalog.communities.empty())
        throw std::runtime_error("community file contains no usable communities");

    double total = 0.0;
    for (const auto& c : catalog.communities)
        total += static_cast<double>(c.size());
    catalog.avg_size = total / static_cast<double>(catalog.communities.size());
    return catalog;
}

inline std::uint64_t volume(const Graph& g, const VertexSet& s) {
    std::uint64_t vol = 0;
    for (Vertex v : s)
        vol += g.degree(v);
    return vol;
}

inline std::uint64_t cut_size(const Graph& g, const VertexSet& s) {
    std::uint64_t cut = 0;
    for (Vertex v : s)
        for (Vertex u : g.neighbors(v))
            if (!s.contains(u))
                ++cut;
    return cut;
}

/// cut / min(vol, 2m - vol) from exact integer counts.
inline double conductance_from_counts(std::uint64_t cut, std::uint64_t vol, std::uint64_t total) {
    const std::uint64_t denom = std::min(vol, total - vol);
    if (denom == 0)
        throw std::domain_error("conductance undefined: a side of the cut has zero volume");
    return static_cast<double>(cut) / static_cast<double>(denom);
}

inline double conductance(const Graph& g, const VertexSet& s) {
    if (s.empty() || s.size() == g.num_vertices())
        throw std::domain_error("conductance undefined for the empty set or the full vertex set");
    return conductance_from_counts(cut_size(g, s), volume(g, s), g.total_volume());
}

/// Subgraph induced by a vertex set together with the map back to its parent.
struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_parent;

    std::optional<Vertex> local_id(Vertex parent_id) const {
        auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent_id);
        if (it == to_parent.end() || *it != parent_id)
            return std::nullopt;
        return static_cast<Vertex>(it - to_parent.begin());
    }
};

/// Local ids follow the ascending parent-id order of `s`; labels are
/// inherited from `g`.
inline InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    if (s.empty())
        throw std::invalid_argument("induced_subgraph of an empty set");
    InducedSubgraph out;
    out.to_parent = s.ids();
    std::vector<Label> labels;
    labels.reserve(s.size());
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (Vertex local = 0; local < s.size(); ++local) {
        const Vertex v = s[local];
        labels.push_back(g.label(v));
        for (Vertex u : g.neighbors(v)) {
            if (u <= v)
                continue;
            auto it = std::lower_bound(out.to_parent.begin(), out.to_parent.end(), u);
            if (it != out.to_parent.end() && *it == u)
                edges.emplace_back(local, static_cast<Vertex>(it - out.to_parent.begin()));
        }
    }
    out.graph = Graph::from_edges(s.size(), edges, std::move(labels));
    return out;
}

} // namespace lemon

#endif // LEMON_GRAPH_HPP_
