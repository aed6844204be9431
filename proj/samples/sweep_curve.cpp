// Prints the conductance sweep of one detection step on an edge list read from stdin.

#include <cstdio>
#include <iostream>

#include <lemon/detect.hpp>

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s SEED_LABEL... < edges.txt\n", argv[0]);
        return 2;
    }
    const auto g = lemon::load_edge_list(std::cin);
    std::vector<lemon::Vertex> ids;
    for (int i = 1; i < argc; ++i) {
        const auto v = g.find(std::stoll(argv[i]));
        if (!v) {
            std::fprintf(stderr, "unknown vertex %s\n", argv[i]);
            return 2;
        }
        ids.push_back(*v);
    }
    lemon::DetectParams params;
    params.size_max = std::min<std::size_t>(params.size_max, g.num_vertices() - 1);
    params.size_min = std::min(params.effective_size_min(ids.size()), params.size_max - 1);
    const auto step = lemon::lemon_step(g, lemon::VertexSet(ids), params);
    if (!step.feasible()) {
        std::fprintf(stderr, "infeasible seed set\n");
        return 4;
    }
    for (std::size_t i = 0; i < step.sweep.phi.size(); ++i)
        std::printf("%zu %.6f\n", step.sweep.size_min + i, step.sweep.phi[i]);
    if (step.sweep.argmin_first)
        std::printf("# first relative minimum at %zu\n", *step.sweep.argmin_first);
    return 0;
}
