// Acceptance gate: one PASS/FAIL/SKIP line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <lemon/detect.hpp>
#include <lemon/evaluation.hpp>
#include <lemon/local_spectra.hpp>
#include <lemon/random_walk.hpp>
#include <lemon/sparse_lp.hpp>
#include <lemon/synth.hpp>

#include "oracles.hpp"

namespace {

using namespace lemon;
using Clock = std::chrono::steady_clock;

enum class Verdict { pass, fail, skip };

struct Outcome {
    Verdict verdict;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

PlantedInstance planted(double p_in, double p_out) {
    PlantedSpec spec;
    spec.num_communities = 10;
    spec.community_size = 20;
    spec.p_in = p_in;
    spec.p_out = p_out;
    spec.rng_seed = 2024;
    return generate_planted(spec);
}

BatchStats batch(const PlantedInstance& inst, Truncation mode, std::size_t trials) {
    DetectParams params;
    params.truncation = mode;
    SeedSpec seeds;
    seeds.strategy = SeedStrategy::random;
    seeds.count = SeedCount{3};
    return run_batch(inst.graph, inst.truth, seeds, params, BatchOptions{trials, 7, 1, {}});
}

Outcome exact_recovery() {
    const auto inst = planted(1.0, 0.0);
    const auto start = Clock::now();
    const auto stats = batch(inst, Truncation::automatic, 50);
    const double secs = seconds_since(start);
    const auto worst = std::min_element(stats.reports.begin(), stats.reports.end(),
                                        [](const auto& a, const auto& b) { return a.f1 < b.f1; });
    const bool ok = worst->f1 == 1.0 && stats.failed == 0 && secs < 1.0;
    return {ok ? Verdict::pass : Verdict::fail, fmt("min F1 %.4f, %.3f s total", worst->f1, secs)};
}

struct StrongRun {
    BatchStats automatic;
    BatchStats sized;
    double auto_seconds = 0.0;
};

const StrongRun& strong_run() {
    static const StrongRun run = [] {
        const auto inst = planted(0.5, 0.01);
        StrongRun r;
        const auto start = Clock::now();
        r.automatic = batch(inst, Truncation::automatic, 50);
        r.auto_seconds = seconds_since(start);
        r.sized = batch(inst, Truncation::ground_truth, 50);
        return r;
    }();
    return run;
}

Outcome strong_separation() {
    const auto& r = strong_run();
    const double f1 = r.automatic.mean_f1;
    const bool ok = f1 >= 0.90 && r.auto_seconds < 10.0;
    return {ok ? Verdict::pass : Verdict::fail,
            fmt("mean F1 %.4f (target 0.90, floor 0.85), %.3f s", f1, r.auto_seconds)};
}

Outcome auto_vs_truth() {
    const auto& r = strong_run();
    const bool ok = r.automatic.mean_f1 >= r.sized.mean_f1 - 0.15;
    return {ok ? Verdict::pass : Verdict::fail,
            fmt("auto %.4f, ground-truth size %.4f", r.automatic.mean_f1, r.sized.mean_f1)};
}

SpectralBasis random_basis(std::size_t n, std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.0, 1.0);
    std::normal_distribution<double> gauss;
    DenseMatrix raw(n, d);
    for (std::size_t c = 0; c < d; ++c)
        for (std::size_t r = 0; r < n; ++r)
            raw(r, c) = c == 0 ? pos(rng) : gauss(rng);
    return orthonormalize(raw);
}

Outcome lp_oracle() {
    std::mt19937_64 rng(2718);
    const auto start = Clock::now();
    std::size_t feasible = 0, mismatches = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial) % 6;
        const std::size_t d = std::min<std::size_t>(1 + static_cast<std::size_t>(trial) % 3, n);
        const auto basis = random_basis(n, d, rng);
        std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
        std::vector<Vertex> chosen(1 + static_cast<std::size_t>(trial) % 2);
        for (auto& v : chosen)
            v = pick(rng);
        const VertexSet seeds(chosen);

        oracle::Matrix rows(n, std::vector<double>(basis.dim()));
        std::vector<double> bound(n, 0.0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < basis.dim(); ++c)
                rows[r][c] = basis.columns(r, c);
        for (Vertex s : seeds)
            bound[s] = 1.0;
        const auto expected = oracle::lp_by_enumeration(rows, bound);

        SparseIndicatorSolution got;
        try {
            got = solve_min_one_norm(basis, seeds);
        } catch (const std::exception&) {
            ++mismatches;
            continue;
        }
        if ((got.status == LpStatus::optimal) != expected.feasible) {
            ++mismatches;
            continue;
        }
        if (!expected.feasible)
            continue;
        ++feasible;
        bool certified = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = basis.row_dot(static_cast<Vertex>(i), got.x);
            certified = certified && std::abs(y - got.y[i]) <= 1e-9 && got.y[i] >= bound[i] - 1e-9;
        }
        const double rel = std::abs(got.objective - expected.objective) / std::max(1.0, std::abs(expected.objective));
        worst = std::max(worst, rel);
        if (!certified || rel > 1e-7)
            ++mismatches;
    }
    const double secs = seconds_since(start);
    const bool ok = mismatches == 0 && secs < 5.0;
    return {ok ? Verdict::pass : Verdict::fail,
            fmt("%.0f mismatches, %.0f feasible cases, ", static_cast<double>(mismatches),
                static_cast<double>(feasible)) +
                fmt("worst rel error %.2e, %.3f s", worst, secs)};
}

Outcome sweep_oracle() {
    std::mt19937_64 rng(31415);
    const auto start = Clock::now();
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 10 + static_cast<std::size_t>(trial) * 19 % 191;
        const auto g = oracle::random_graph(n, 5.0 / static_cast<double>(n), rng);
        if (g.num_edges() == 0)
            continue;
        std::vector<Vertex> ranked(n);
        std::iota(ranked.begin(), ranked.end(), Vertex{0});
        std::shuffle(ranked.begin(), ranked.end(), rng);
        const auto curve = sweep_conductance(g, ranked, 1, n - 1);
        const auto edges = g.edges();
        std::vector<bool> in(n, false);
        for (std::size_t size = 1; size < n; ++size) {
            in[ranked[size - 1]] = true;
            worst = std::max(worst, std::abs(curve.at(size) - oracle::conductance(edges, in)));
        }
    }
    const double secs = seconds_since(start);
    const bool ok = worst <= 1e-12 && secs < 5.0;
    return {ok ? Verdict::pass : Verdict::fail, fmt("max deviation %.2e, %.3f s", worst, secs)};
}

double orthonormality_error(const SpectralBasis& v) {
    double worst = 0.0;
    for (std::size_t a = 0; a < v.dim(); ++a)
        for (std::size_t b = 0; b < v.dim(); ++b) {
            long double acc = 0.0L;
            for (std::size_t r = 0; r < v.num_vertices(); ++r)
                acc += static_cast<long double>(v.columns(r, a)) * v.columns(r, b);
            worst = std::max(worst, std::abs(static_cast<double>(acc) - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

Outcome orthonormality() {
    std::mt19937_64 rng(1618);
    double worst = 0.0;
    std::size_t checks = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 20 + static_cast<std::size_t>(trial) * 37 % 481;
        const auto g = oracle::random_graph(n, 6.0 / static_cast<double>(n), rng);
        const WalkOperator op(g, Normalization::symmetric);
        std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
        const VertexSet seeds{pick(rng), pick(rng), pick(rng)};
        auto v = orthonormalize(build_span(op, initial_vector(g, seeds, InitMode::uniform), 3));
        worst = std::max(worst, orthonormality_error(v));
        for (int step = 0; step < 6; ++step) {
            v = advance_basis(op, std::move(v), 1);
            worst = std::max(worst, orthonormality_error(v));
            ++checks;
        }
    }
    return {worst < 1e-10 ? Verdict::pass : Verdict::fail,
            fmt("max |V^T V - I| %.2e over %.0f steps", worst, static_cast<double>(checks))};
}

Outcome mass_conservation() {
    std::mt19937_64 rng(577);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 30 + static_cast<std::size_t>(trial) * 13;
        const auto g = oracle::random_graph(n, 4.0 / static_cast<double>(n), rng);
        const WalkOperator op(g, Normalization::stochastic);
        std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
        auto p = initial_vector(g, VertexSet{pick(rng), pick(rng)}, InitMode::uniform);
        for (int step = 0; step < 50; ++step) {
            p = propagate(op, p);
            worst = std::max(worst, std::abs(p.total() - 1.0));
        }
    }
    return {worst < 1e-12 ? Verdict::pass : Verdict::fail, fmt("max drift %.2e", worst)};
}

Outcome scoring() {
    const bool hand = f1_score(VertexSet{1, 2, 3}, VertexSet{1, 2, 3}).f1 == 1.0 &&
                      f1_score(VertexSet{1, 2, 3, 4}, VertexSet{3, 4, 5, 6}).f1 == 0.5 &&
                      f1_score(VertexSet{1, 2}, VertexSet{3, 4}).f1 == 0.0;
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<Vertex> id(0, 50);
    std::uniform_int_distribution<int> len(1, 30);
    std::size_t violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Vertex> a(static_cast<std::size_t>(len(rng))), b(static_cast<std::size_t>(len(rng)));
        for (auto& v : a)
            v = id(rng);
        for (auto& v : b)
            v = id(rng);
        const VertexSet c(a), t(b);
        const auto ct = f1_score(c, t);
        const auto tc = f1_score(t, c);
        if (ct.precision != tc.recall || ct.recall != tc.precision)
            ++violations;
    }
    const bool ok = hand && violations == 0;
    return {ok ? Verdict::pass : Verdict::fail,
            std::string("hand values ") + (hand ? "match" : "differ") +
                fmt(", %.0f duality violations in 1000 pairs", static_cast<double>(violations))};
}

Outcome amazon() {
    const char* graph_path = std::getenv("LEMON_AMAZON_GRAPH");
    const char* cmty_path = std::getenv("LEMON_AMAZON_CMTY");
    if (!graph_path || !cmty_path)
        return {Verdict::skip, "set LEMON_AMAZON_GRAPH and LEMON_AMAZON_CMTY to run"};
    std::ifstream gin(graph_path), cin(cmty_path);
    if (!gin || !cin)
        return {Verdict::fail, "cannot open dataset files"};
    const auto g = load_edge_list(gin);
    const auto catalog = load_communities(cin, g);
    DetectParams params;
    params.truncation = Truncation::ground_truth;
    const std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    const auto stats = run_batch(g, catalog, SeedSpec{}, params, BatchOptions{120, 7, jobs, {}});
    const bool ok = stats.mean_f1 >= 0.85 && stats.mean_f1 <= 1.0 && stats.max_runtime_ms < 15000.0;
    return {ok ? Verdict::pass : Verdict::fail,
            fmt("mean F1 %.4f, max per-seed-set runtime %.1f ms", stats.mean_f1, stats.max_runtime_ms)};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 exact recovery on disjoint cliques", exact_recovery},
        {"2 strong-separation planted partition", strong_separation},
        {"3 auto vs ground-truth size gap", auto_vs_truth},
        {"4 LP solver vs enumeration oracle", lp_oracle},
        {"5 incremental sweep vs recomputation", sweep_oracle},
        {"6 basis orthonormality", orthonormality},
        {"7 stochastic mass conservation", mass_conservation},
        {"8 scoring identities", scoring},
        {"9 Amazon full-scale", amazon},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {Verdict::fail, std::string("exception: ") + e.what()};
        }
        const char* tag = o.verdict == Verdict::pass ? "PASS" : o.verdict == Verdict::skip ? "SKIP" : "FAIL";
        std::printf("%s  %s: %s\n", tag, name.c_str(), o.detail.c_str());
        failures += o.verdict == Verdict::fail;
    }
    std::printf("%d failed\n", failures);
    return failures == 0 ? 0 : 1;
}
