/*
 * evaluation.hpp
 *
 * Batch benchmark: sample ground-truth communities, pick seeds, detect,
 * score with F1, and aggregate. Trials are independent and each draws its
 * randomness from (rng_seed, trial index), so the outcome does not depend on
 * the number of worker threads.
 */

#ifndef LEMON_EVALUATION_HPP_
#define LEMON_EVALUATION_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include <lemon/detect.hpp>
#include <lemon/graph.hpp>
#include <lemon/scoring.hpp>
#include <lemon/seeding.hpp>

namespace lemon {

struct TrialReport {
    std::size_t trial = 0;
    std::size_t community = 0; // index into the catalog
    std::vector<Label> seeds;
    std::size_t truth_size = 0;
    std::size_t detected_size = 0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double conductance = 1.0;
    std::size_t iterations = 0;
    std::size_t walk_steps = 0; // (k, l) used for the reported detection
    std::size_t dim = 0;
    double runtime_ms = 0.0;
    bool failed = false; // infeasible detection or seeding error; scored 0
    std::string note;

    friend bool operator==(const TrialReport&, const TrialReport&) = default;
};

struct BatchStats {
    std::size_t trials = 0;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
    double mean_runtime_ms = 0.0;
    double max_runtime_ms = 0.0;
    std::size_t failed = 0;
    bool degenerate = false; // a single trial: std is 0 by convention
    std::vector<TrialReport> reports;

    friend bool operator==(const BatchStats&, const BatchStats&) = default;
};

struct BatchOptions {
    std::size_t trials = 24;
    std::uint64_t rng_seed = 0;
    std::size_t jobs = 1;
    /// (walk_steps, dim) pairs; when nonempty each trial keeps the pair with
    /// the best F1 against its ground-truth community.
    std::vector<std::pair<std::size_t, std::size_t>> step_dim_grid;
};

/// Sample mean and (n - 1) standard deviation of the per-trial F1 and
/// runtime fields.
inline void summarize(BatchStats& stats) {
    stats.trials = stats.reports.size();
    if (stats.trials == 0)
        throw std::invalid_argument("summarize: no trials");
    double sum = 0.0;
    double rt = 0.0;
    stats.max_runtime_ms = 0.0;
    stats.failed = 0;
    for (const auto& r : stats.reports) {
        sum += r.f1;
        rt += r.runtime_ms;
        stats.max_runtime_ms = std::max(stats.max_runtime_ms, r.runtime_ms);
        stats.failed += r.failed ? 1 : 0;
    }
    const auto n = static_cast<double>(stats.trials);
    stats.mean_f1 = sum / n;
    stats.mean_runtime_ms = rt / n;
    stats.degenerate = stats.trials == 1;
    double sq = 0.0;
    for (const auto& r : stats.reports)
        sq += (r.f1 - stats.mean_f1) * (r.f1 - stats.mean_f1);
    stats.std_f1 = stats.degenerate ? 0.0 : std::sqrt(sq / (n - 1.0));
}

inline TrialReport run_trial(const Graph& g, const GroundTruthCatalog& catalog, const SeedSpec& spec,
                             const DetectParams& params, std::uint64_t rng_seed, std::size_t trial,
                             std::span<const std::pair<std::size_t, std::size_t>> grid = {}) {
    TrialReport report;
    report.trial = trial;
    const std::uint64_t stream = mix_seed(rng_seed, trial);
    std::mt19937_64 rng(stream);
    std::uniform_int_distribution<std::size_t> pick(0, catalog.communities.size() - 1);
    report.community = pick(rng);
    const VertexSet& truth = catalog.communities[report.community];
    report.truth_size = truth.size();

    const std::pair<std::size_t, std::size_t> own{params.walk_steps, params.dim};
    if (grid.empty())
        grid = std::span(&own, 1);

    const auto start = std::chrono::steady_clock::now();
    try {
        SeedSpec trial_spec = spec;
        trial_spec.rng_seed = mix_seed(stream, 1);
        const auto selection = select_seeds(g, truth, trial_spec);
        for (Vertex s : selection.seeds)
            report.seeds.push_back(g.label(s));

        std::optional<GroundTruth> hint;
        if (params.truncation == Truncation::ground_truth)
            hint = GroundTruth{truth.size(), truth};
        bool found = false;
        for (auto [k, l] : grid) {
            DetectParams p = params;
            p.walk_steps = k;
            p.dim = l;
            const auto result = detect(g, selection.seeds, p, hint);
            if (result.members.empty())
                continue;
            const auto score = f1_score(result.members, truth);
            if (found && score.f1 <= report.f1)
                continue;
            found = true;
            report.f1 = score.f1;
            report.precision = score.precision;
            report.recall = score.recall;
            report.detected_size = result.members.size();
            report.conductance = result.phi_at_chosen;
            report.iterations = result.iterations;
            report.walk_steps = k;
            report.dim = l;
        }
        if (!found) {
            report.failed = true;
            report.note = "infeasible";
        }
    } catch (const std::exception& e) {
        report.failed = true;
        report.note = e.what();
    }
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

/// Runs `options.trials` independent seed-expansion test cases. The sample
/// size defaults to alpha times the catalog's average community size.
inline BatchStats run_batch(const Graph& g, const GroundTruthCatalog& catalog, const SeedSpec& spec,
                            DetectParams params, const BatchOptions& options) {
    if (options.trials < 1)
        throw std::invalid_argument("run_batch: trials must be at least 1");
    if (catalog.communities.empty())
        throw std::invalid_argument("run_batch: empty community catalog");
    params.validate();
    for (auto [k, l] : options.step_dim_grid)
        if (k < 1 || l < 1)
            throw std::invalid_argument("run_batch: grid entries need walk_steps and dim of at least 1");
    if (!params.avg_community_size)
        params.avg_community_size = catalog.avg_size;

    BatchStats stats;
    stats.reports.resize(options.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < options.trials; t = next++)
            stats.reports[t] = run_trial(g, catalog, spec, params, options.rng_seed, t, options.step_dim_grid);
    };
    const std::size_t jobs = std::clamp<std::size_t>(options.jobs, 1, options.trials);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }
    summarize(stats);
    return stats;
}

enum class ReportFormat { json, csv };

inline void to_json(nlohmann::json& j, const TrialReport& r) {
    j = nlohmann::json{{"trial", r.trial},
                       {"community", r.community},
                       {"seeds", r.seeds},
                       {"truth_size", r.truth_size},
                       {"detected_size", r.detected_size},
                       {"f1", r.f1},
                       {"precision", r.precision},
                       {"recall", r.recall},
                       {"conductance", r.conductance},
                       {"iterations", r.iterations},
                       {"walk_steps", r.walk_steps},
                       {"dim", r.dim},
                       {"runtime_ms", r.runtime_ms},
                       {"failed", r.failed},
                       {"note", r.note}};
}

inline void from_json(const nlohmann::json& j, TrialReport& r) {
    j.at("trial").get_to(r.trial);
    j.at("community").get_to(r.community);
    j.at("seeds").get_to(r.seeds);
    j.at("truth_size").get_to(r.truth_size);
    j.at("detected_size").get_to(r.detected_size);
    j.at("f1").get_to(r.f1);
    j.at("precision").get_to(r.precision);
    j.at("recall").get_to(r.recall);
    j.at("conductance").get_to(r.conductance);
    j.at("iterations").get_to(r.iterations);
    j.at("walk_steps").get_to(r.walk_steps);
    j.at("dim").get_to(r.dim);
    j.at("runtime_ms").get_to(r.runtime_ms);
    j.at("failed").get_to(r.failed);
    j.at("note").get_to(r.note);
}

inline void to_json(nlohmann::json& j, const BatchStats& s) {
    j = nlohmann::json{{"trials", s.trials},
                       {"mean_f1", s.mean_f1},
                       {"std_f1", s.std_f1},
                       {"mean_runtime_ms", s.mean_runtime_ms},
                       {"max_runtime_ms", s.max_runtime_ms},
                       {"failed", s.failed},
                       {"degenerate", s.degenerate},
                       {"reports", s.reports}};
}

inline void from_json(const nlohmann::json& j, BatchStats& s) {
    j.at("trials").get_to(s.trials);
    j.at("mean_f1").get_to(s.mean_f1);
    j.at("std_f1").get_to(s.std_f1);
    j.at("mean_runtime_ms").get_to(s.mean_runtime_ms);
    j.at("max_runtime_ms").get_to(s.max_runtime_ms);
    j.at("failed").get_to(s.failed);
    j.at("degenerate").get_to(s.degenerate);
    j.at("reports").get_to(s.reports);
}

namespace detail {

inline std::string fmt_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace detail

/// JSON document, or CSV with a header, one row per trial and a final
/// "summary" row.
inline std::string export_report(const BatchStats& stats, ReportFormat format) {
    if (format == ReportFormat::json)
        return nlohmann::json(stats).dump(2) + "\n";

    std::ostringstream out;
    out << "row,community,seeds,truth_size,detected_size,f1,precision,recall,conductance,iterations,walk_steps,dim,"
           "runtime_ms,failed,note\n";
    for (const auto& r : stats.reports) {
        std::string seeds;
        for (std::size_t i = 0; i < r.seeds.size(); ++i)
            seeds += (i ? " " : "") + std::to_string(r.seeds[i]);
        out << r.trial << ',' << r.community << ',' << seeds << ',' << r.truth_size << ',' << r.detected_size << ','
            << detail::fmt_real(r.f1) << ',' << detail::fmt_real(r.precision) << ','
            << detail::fmt_real(r.recall) << ',' << detail::fmt_real(r.conductance) << ',' << r.iterations << ','
            << r.walk_steps << ',' << r.dim << ','
            << detail::fmt_real(r.runtime_ms) << ',' << (r.failed ? 1 : 0) << ',' << detail::csv_quote(r.note)
            << '\n';
    }
    std::string note = "std_f1=" + detail::fmt_real(stats.std_f1) + " trials=" + std::to_string(stats.trials);
    if (stats.degenerate)
        note += " degenerate";
    out << "summary,,,,," << detail::fmt_real(stats.mean_f1) << ",,,,,,," << detail::fmt_real(stats.mean_runtime_ms)
        << ',' << stats.failed << ',' << note << '\n';
    return out.str();
}

} // namespace lemon

#endif // LEMON_EVALUATION_HPP_
