/*
 * cli.hpp
 *
 * Command-line front end: detect, benchmark, sample and generate
 * subcommands. Data goes to stdout or --out (written through a temporary
 * file and renamed); diagnostics go to the error stream.
 *
 * Exit codes: 0 ok, 2 usage, 3 io/parse, 4 infeasible detection.
 */

#ifndef LEMON_CLI_HPP_
#define LEMON_CLI_HPP_

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <lemon/detect.hpp>
#include <lemon/evaluation.hpp>
#include <lemon/graph.hpp>
#include <lemon/random_walk.hpp>
#include <lemon/seeding.hpp>
#include <lemon/synth.hpp>

namespace lemon::cli {

enum ExitCode : int { ok = 0, usage = 2, io = 3, infeasible = 4 };

enum class Command { detect, benchmark, sample, generate };

/// Raised by parse_args; `code` is 0 for --help.
class UsageError : public std::runtime_error {
public:
    UsageError(int code, const std::string& message) : std::runtime_error(message), code(code) {}
    int code;
};

struct CliConfig {
    Command command = Command::detect;
    std::string graph_path;
    std::string communities_path;
    std::string output_path; // empty: stdout
    std::string relabel_path;
    std::string communities_out;
    std::vector<Label> seeds;
    DetectParams params;
    std::optional<std::size_t> truth_size;
    SeedSpec seed_spec;
    std::size_t trials = 120;
    std::size_t jobs = 1;
    std::vector<std::pair<std::size_t, std::size_t>> grid; // (walk_steps, dim), best F1 kept
    std::uint64_t rng_seed = 0;
    ReportFormat format = ReportFormat::json;
    std::optional<std::size_t> target_size;
    PlantedSpec planted;
    bool timing = true;
    int verbosity = 0;
};

namespace detail {

inline std::vector<Label> parse_label_list(const std::string& text) {
    std::vector<Label> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        auto b = token.find_first_not_of(" \t");
        auto e = token.find_last_not_of(" \t");
        if (b == std::string::npos)
            continue;
        token = token.substr(b, e - b + 1);
        std::size_t used = 0;
        Label v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != token.size() || token.empty())
            throw UsageError(usage, "invalid seed label '" + token + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError(usage, "--seeds must list at least one vertex");
    return out;
}

/// Parses "k:l,k:l" into (walk_steps, dim) pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> parse_grid(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        const auto colon = token.find(':');
        std::size_t used_k = 0, used_l = 0;
        long long k = 0, l = 0;
        try {
            if (colon == std::string::npos)
                throw std::invalid_argument("no colon");
            const std::string a = token.substr(0, colon), b = token.substr(colon + 1);
            k = std::stoll(a, &used_k);
            l = std::stoll(b, &used_l);
            if (used_k != a.size() || used_l != b.size())
                throw std::invalid_argument("trailing text");
        } catch (const std::exception&) {
            throw UsageError(usage, "invalid --grid entry '" + token + "', expected k:l");
        }
        if (k < 1 || l < 1)
            throw UsageError(usage, "--grid entries must be positive");
        out.emplace_back(static_cast<std::size_t>(k), static_cast<std::size_t>(l));
    }
    if (out.empty())
        throw UsageError(usage, "--grid must list at least one k:l pair");
    return out;
}

/// Reads "key = value" lines ('#' comments) and inserts "--key value" after
/// the subcommand for every key not already given on the command line.
inline std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i + 1 < args.size(); ++i) {
        if (args[i] == "--config") {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty())
        return args;
    std::ifstream in(path);
    if (!in)
        throw UsageError(io, "cannot open config file " + path);

    std::vector<std::string> extra;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#')
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(usage, path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            auto l = s.find_first_not_of(" \t\r");
            auto r = s.find_last_not_of(" \t\r");
            return l == std::string::npos ? std::string{} : s.substr(l, r - l + 1);
        };
        const std::string key = "--" + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        bool given = false;
        for (const auto& a : args)
            given = given || a == key || a.rfind(key + "=", 0) == 0;
        if (given)
            continue;
        if (value == "true") {
            extra.push_back(key);
        } else if (value != "false") {
            extra.push_back(key);
            extra.push_back(value);
        }
    }
    // args[0] is the program name, args[1] the subcommand
    const auto at = args.size() >= 2 ? args.begin() + 2 : args.end();
    args.insert(at, extra.begin(), extra.end());
    return args;
}

inline void add_detection_flags(CLI::App& app, CliConfig& c, std::string& init, bool& automatic) {
    auto& p = c.params;
    app.add_option("--walk-steps", p.walk_steps, "random walk steps k")->check(CLI::PositiveNumber);
    app.add_option("--dim", p.dim, "span dimension l")->check(CLI::PositiveNumber);
    app.add_option("--expand-step", p.expand_step, "seed expansion step s")->check(CLI::PositiveNumber);
    app.add_option("--alpha", p.alpha, "sample size multiplier")->check(CLI::PositiveNumber);
    app.add_option("--avg-size", p.avg_community_size, "average community size used with --alpha");
    app.add_option("--sample-size", p.sample_size, "sample size when --avg-size is unknown");
    app.add_option("--size-min", p.size_min, "smallest community size swept");
    app.add_option("--size-max", p.size_max, "largest community size swept");
    app.add_option("--max-iters", p.max_reseed_iters, "reseeding iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--window", p.sweep_window, "relative minimum lookahead");
    app.add_option("--init", init, "initial distribution")->check(CLI::IsMember({"uniform", "degree"}));
    app.add_flag("--auto", automatic, "pick the community size from the conductance sweep");
    app.add_flag("--timing,!--no-timing", c.timing, "omit timing fields");
}

} // namespace detail

inline CliConfig parse_args(std::vector<std::string> args) {
    if (args.empty())
        args.push_back("lemon");
    args = detail::merge_config(std::move(args));

    CliConfig c;
    CLI::App app{"Local community detection from seed sets", "lemon"};
    app.require_subcommand(1);
    app.add_option("--config", "key=value configuration file (flags override it)");
    app.add_flag("-v,--verbose", c.verbosity, "more diagnostics");

    std::string init = "uniform";
    std::string seeds_text;
    std::string strategy = "random";
    std::string format = "json";
    std::string grid_text;
    bool automatic = false;
    std::optional<std::size_t> seed_count;
    std::optional<double> seed_ratio;

    auto* detect = app.add_subcommand("detect", "detect the community around a seed set");
    detect->add_option("--graph", c.graph_path, "edge list")->required();
    detect->add_option("--seeds", seeds_text, "comma-separated seed labels")->required();
    detail::add_detection_flags(*detect, c, init, automatic);
    auto* truth_opt = detect->add_option("--truth-size", c.truth_size, "truncate at a known size");
    truth_opt->excludes(detect->get_option("--auto"));
    detect->add_option("--output", format, "output format")->check(CLI::IsMember({"json"}));
    detect->add_option("--out", c.output_path, "output file (default stdout)");

    auto* bench = app.add_subcommand("benchmark", "score detection against ground-truth communities");
    bench->add_option("--graph", c.graph_path, "edge list")->required();
    bench->add_option("--communities", c.communities_path, "ground-truth communities")->required();
    bench->add_option("--trials", c.trials, "number of test cases");
    bench->add_option("--seed-strategy", strategy, "seed selection strategy")
        ->check(CLI::IsMember({"high_degree", "low_degree", "triangle", "random", "high_inward_ratio"}));
    auto* count_opt = bench->add_option("--seed-count", seed_count, "seeds per test case");
    auto* ratio_opt = bench->add_option("--seed-ratio", seed_ratio, "seeds as a fraction of the community");
    count_opt->excludes(ratio_opt);
    bench->add_option("--rng-seed", c.rng_seed, "random seed");
    bench->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    bench->add_option("--out", c.output_path, "output file (default stdout)");
    bench->add_option("--grid", grid_text, "k:l pairs tried per trial, best F1 kept");
    bench->add_option("--jobs", c.jobs, "worker threads")->envname("LEMON_JOBS")->check(CLI::PositiveNumber);
    c.jobs = std::max(1u, std::thread::hardware_concurrency());
    detail::add_detection_flags(*bench, c, init, automatic);

    auto* sample = app.add_subcommand("sample", "extract the random-walk sample around a seed set");
    sample->add_option("--graph", c.graph_path, "edge list")->required();
    sample->add_option("--seeds", seeds_text, "comma-separated seed labels")->required();
    auto* target_opt = sample->add_option("--target-size", c.target_size, "vertices to spread to");
    sample->add_option("--alpha", c.params.alpha, "multiplier of --avg-size")->check(CLI::PositiveNumber);
    sample->add_option("--avg-size", c.params.avg_community_size, "average community size")
        ->excludes(target_opt);
    sample->add_option("--max-steps", c.params.sampler.max_steps, "walk step cap");
    sample->add_option("--cap-factor", c.params.sampler.hard_cap_factor, "hard cap as a multiple of the target");
    sample->add_option("--out", c.output_path, "edge list output (default stdout)");
    sample->add_option("--relabel", c.relabel_path, "internal -> external label map")->required();

    auto* gen = app.add_subcommand("generate", "planted-partition test graph");
    gen->add_option("--num-communities", c.planted.num_communities, "blocks");
    gen->add_option("--community-size", c.planted.community_size, "vertices per block");
    gen->add_option("--p-in", c.planted.p_in, "intra-block edge probability");
    gen->add_option("--p-out", c.planted.p_out, "inter-block edge probability");
    gen->add_option("--rng-seed", c.planted.rng_seed, "random seed");
    gen->add_option("--out", c.output_path, "edge list output (default stdout)");
    gen->add_option("--communities-out", c.communities_out, "community file")->required();

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw UsageError(ok, app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw UsageError(ok, app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(usage, e.what());
    }

    if (detect->parsed())
        c.command = Command::detect;
    else if (bench->parsed())
        c.command = Command::benchmark;
    else if (sample->parsed())
        c.command = Command::sample;
    else
        c.command = Command::generate;

    c.params.init = init == "degree" ? InitMode::degree_weighted : InitMode::uniform;
    if (c.command == Command::detect || c.command == Command::sample)
        c.seeds = detail::parse_label_list(seeds_text);
    if (c.command == Command::detect) {
        c.params.truncation = c.truth_size ? Truncation::ground_truth : Truncation::automatic;
        if (c.truth_size && *c.truth_size == 0)
            throw UsageError(usage, "--truth-size must be positive");
    }
    if (c.command == Command::benchmark) {
        if (c.trials < 1)
            throw UsageError(usage, "--trials must be at least 1");
        c.params.truncation = automatic ? Truncation::automatic : Truncation::ground_truth;
        c.seed_spec.strategy = parse_seed_strategy(strategy);
        if (seed_ratio) {
            if (!(*seed_ratio > 0.0 && *seed_ratio <= 1.0))
                throw UsageError(usage, "--seed-ratio must lie in (0, 1]");
            c.seed_spec.count = SeedRatio{*seed_ratio};
        } else {
            c.seed_spec.count = SeedCount{seed_count.value_or(3)};
        }
        c.format = format == "csv" ? ReportFormat::csv : ReportFormat::json;
        if (!grid_text.empty())
            c.grid = detail::parse_grid(grid_text);
    }
    if (c.command == Command::generate) {
        try {
            c.planted.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(usage, e.what());
        }
    }
    if (c.command == Command::detect || c.command == Command::benchmark) {
        try {
            c.params.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(usage, e.what());
        }
    }
    return c;
}

namespace detail {

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Graph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open graph file " + path);
    return load_edge_list(in);
}

/// Writes through path.tmp + rename, or to `fallback` when path is empty.
inline void emit(const std::string& path, const std::string& data, std::ostream& fallback) {
    if (path.empty()) {
        fallback << data;
        fallback.flush();
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp);
        out << data;
        if (!out.flush())
            throw IoError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

inline VertexSet resolve_seeds(const Graph& g, const std::vector<Label>& labels) {
    std::vector<Vertex> ids;
    for (Label l : labels) {
        auto v = g.find(l);
        if (!v)
            throw std::invalid_argument("seed " + std::to_string(l) + " is not a vertex of the graph");
        ids.push_back(*v);
    }
    return VertexSet(std::move(ids));
}

inline std::string edge_list_text(const Graph& g, bool use_labels) {
    std::string out;
    for (auto [u, v] : g.edges()) {
        out += std::to_string(use_labels ? g.label(u) : u);
        out += ' ';
        out += std::to_string(use_labels ? g.label(v) : v);
        out += '\n';
    }
    return out;
}

inline int run_detect(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const Graph g = read_graph(c.graph_path);
    VertexSet seeds;
    try {
        seeds = resolve_seeds(g, c.seeds);
    } catch (const std::invalid_argument& e) {
        err << "lemon: " << e.what() << '\n';
        return usage;
    }
    const auto start = std::chrono::steady_clock::now();
    std::optional<GroundTruth> hint;
    if (c.truth_size)
        hint = GroundTruth{*c.truth_size, std::nullopt};
    const auto result = detect(g, seeds, c.params, hint);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (result.members.empty()) {
        err << "lemon: detection infeasible for this seed set\n";
        return infeasible;
    }
    if (c.verbosity > 0)
        err << "lemon: subgraph " << result.subgraph_size << " vertices, best iteration " << result.best_iteration
            << (result.sampler_warning ? ", sampler saturated" : "") << '\n';

    nlohmann::json doc;
    doc["members"] = result.labels;
    doc["conductance"] = result.phi_at_chosen;
    doc["size"] = result.chosen_size;
    doc["iterations"] = result.iterations;
    if (c.timing)
        doc["runtime_ms"] = ms;
    emit(c.output_path, doc.dump() + "\n", out);
    return ok;
}

inline int run_benchmark(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const Graph g = read_graph(c.graph_path);
    std::ifstream cin(c.communities_path);
    if (!cin)
        throw IoError("cannot open community file " + c.communities_path);
    const auto catalog = load_communities(cin, g);
    if (c.verbosity > 0)
        err << "lemon: " << catalog.communities.size() << " communities, average size " << catalog.avg_size
            << '\n';
    auto stats = run_batch(g, catalog, c.seed_spec, c.params, BatchOptions{c.trials, c.rng_seed, c.jobs, c.grid});
    if (!c.timing) {
        for (auto& r : stats.reports)
            r.runtime_ms = 0.0;
        summarize(stats);
    }
    emit(c.output_path, export_report(stats, c.format), out);
    return ok;
}

inline int run_sample(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const Graph g = read_graph(c.graph_path);
    VertexSet seeds;
    try {
        seeds = resolve_seeds(g, c.seeds);
    } catch (const std::invalid_argument& e) {
        err << "lemon: " << e.what() << '\n';
        return usage;
    }
    const std::size_t target = c.target_size.value_or(c.params.target_sample_size());
    const auto s = sample_subgraph(g, seeds, target, c.params.sampler);
    if (s.stalled)
        err << "lemon: walk saturated its component at " << s.vertices.size() << " vertices\n";
    std::string relabel;
    for (Vertex v = 0; v < s.sub.to_parent.size(); ++v)
        relabel += std::to_string(v) + ' ' + std::to_string(g.label(s.sub.to_parent[v])) + '\n';
    emit(c.relabel_path, relabel, out);
    emit(c.output_path, edge_list_text(s.sub.graph, false), out);
    return ok;
}

inline int run_generate(const CliConfig& c, std::ostream& out, std::ostream& err) {
    const auto inst = generate_planted(c.planted);
    if (inst.reconnected > 0)
        err << "lemon: reconnected " << inst.reconnected << " isolated vertices\n";
    std::string cm;
    for (const auto& comm : inst.truth.communities) {
        for (std::size_t i = 0; i < comm.size(); ++i) {
            cm += i ? " " : "";
            cm += std::to_string(inst.graph.label(comm[i]));
        }
        cm += '\n';
    }
    emit(c.communities_out, cm, out);
    emit(c.output_path, edge_list_text(inst.graph, true), out);
    return ok;
}

} // namespace detail

inline int run(const CliConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        switch (c.command) {
        case Command::detect: return detail::run_detect(c, out, err);
        case Command::benchmark: return detail::run_benchmark(c, out, err);
        case Command::sample: return detail::run_sample(c, out, err);
        case Command::generate: return detail::run_generate(c, out, err);
        }
    } catch (const detail::IoError& e) {
        err << "lemon: " << e.what() << '\n';
        return io;
    } catch (const ParseError& e) {
        err << "lemon: parse error: " << e.what() << '\n';
        return io;
    } catch (const std::exception& e) {
        err << "lemon: " << e.what() << '\n';
        return io;
    }
    return usage;
}

/// parse_args + run with usage errors mapped to exit codes.
inline int main(std::vector<std::string> args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        return run(parse_args(std::move(args)), out, err);
    } catch (const UsageError& e) {
        (e.code == ok ? out : err) << e.what() << '\n';
        return e.code;
    }
}

} // namespace lemon::cli

#endif // LEMON_CLI_HPP_
