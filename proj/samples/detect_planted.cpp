// Detects one planted community from three seeds and prints the result.

#include <cstdio>

#include <lemon/detect.hpp>
#include <lemon/seeding.hpp>
#include <lemon/synth.hpp>

int main() {
    lemon::PlantedSpec spec;
    spec.num_communities = 10;
    spec.community_size = 20;
    spec.p_in = 0.5;
    spec.p_out = 0.01;
    const auto inst = lemon::generate_planted(spec);
    const auto& truth = inst.truth.communities[4];

    lemon::SeedSpec seeding;
    seeding.rng_seed = 11;
    const auto seeds = lemon::select_seeds(inst.graph, truth, seeding).seeds;

    lemon::DetectParams params;
    params.avg_community_size = inst.truth.avg_size;
    const auto result = lemon::detect(inst.graph, seeds, params);

    std::printf("seeds:");
    for (auto s : seeds)
        std::printf(" %ld", static_cast<long>(inst.graph.label(s)));
    std::printf("\nfound %zu vertices, conductance %.4f, F1 %.4f after %zu iterations\n", result.members.size(),
                result.phi_at_chosen, lemon::f1_score(result.members, truth).f1, result.iterations);
    return 0;
}
