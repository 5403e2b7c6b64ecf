// Command-line front end: synthetic instance generation, repeated seeded
// prioritization, APFD evaluation, statistical comparison and efficiency
// benchmarking over coverage/kill matrices.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tcprio/evaluation.hpp"
#include "tcprio/experiment.hpp"
#include "tcprio/matrix_io.hpp"
#include "tcprio/stats.hpp"
#include "tcprio/strategies.hpp"
#include "tcprio/synth.hpp"

namespace {

using namespace tcprio;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct CommonOpts {
    std::string coverage_path;
    std::string kill_path;
    std::string out_path;
    std::string format = "tsv";
    std::vector<std::string> strategy_names;
    std::size_t repeats = 1000;
    std::uint64_t seed = 0;
    StrategyConfig config;
};

MatrixFormat format_of(const std::string& name) {
    const auto format = parse_format(name);
    if (!format) throw InputError("unknown format '" + name + "'");
    return *format;
}

std::vector<StrategyId> strategies_of(const std::vector<std::string>& names) {
    if (names.empty()) throw InputError("at least one --strategy is required");
    std::vector<StrategyId> ids;
    ids.reserve(names.size());
    for (const auto& name : names) {
        const auto id = parse_strategy(name);
        if (!id) throw InputError("unknown strategy '" + name + "'");
        ids.push_back(*id);
    }
    return ids;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    return out;
}

void add_strategy_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--strategy", opts.strategy_names,
                    "Strategy to run (repeatable): total|additional|unified|"
                    "lexicographical|art|search|ocp");
    cmd->add_option("--repeats", opts.repeats, "Independent runs per strategy");
    cmd->add_option("--seed", opts.seed, "Base seed for per-run seed derivation");
    cmd->add_option("--unified-ratio", opts.config.unified_ratio,
                    "Weight decay ratio for the unified strategy [0,1]");
    cmd->add_option("--art-candidates", opts.config.art_candidate_size,
                    "Candidate set size for the art strategy");
    cmd->add_option("--ga-population", opts.config.ga.population, "GA population size");
    cmd->add_option("--ga-generations", opts.config.ga.generations, "GA generations");
    cmd->add_option("--ga-crossover-rate", opts.config.ga.crossover_rate,
                    "GA crossover probability [0,1]");
    cmd->add_option("--ga-mutation-rate", opts.config.ga.mutation_rate,
                    "GA mutation probability [0,1]");
    cmd->add_option("--ga-tournament", opts.config.ga.tournament_size,
                    "GA tournament size");
}

int cmd_synth(const CommonOpts& opts, const SynthSpec& spec) {
    const SynthInstance instance = generate_instance(spec);
    const MatrixFormat format = format_of(opts.format);
    if (opts.coverage_path.empty()) throw InputError("--coverage output path is required");
    save_coverage(opts.coverage_path, instance.coverage, format);
    if (!opts.kill_path.empty()) {
        save_kill(opts.kill_path, instance.kills, format);
    }
    return kExitOk;
}

int cmd_prioritize(const CommonOpts& opts) {
    if (opts.coverage_path.empty()) throw InputError("--coverage is required");
    const CoverageMatrix matrix = load_coverage(opts.coverage_path, format_of(opts.format));
    ExperimentPlan plan;
    plan.strategies = strategies_of(opts.strategy_names);
    plan.repeats = opts.repeats;
    plan.base_seed = opts.seed;
    plan.config = opts.config;
    const std::vector<Ordering> orderings = run_plan(matrix, plan);
    if (opts.out_path.empty()) {
        write_orderings(std::cout, orderings);
    } else {
        save_orderings(opts.out_path, orderings);
    }
    return kExitOk;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& orderings_path) {
    if (opts.kill_path.empty()) throw InputError("--kill is required");
    const MatrixFormat format = format_of(opts.format);
    const std::vector<Ordering> orderings = load_orderings(orderings_path);
    const KillMatrix kills = load_kill(opts.kill_path, format);
    std::optional<CoverageMatrix> coverage;
    if (!opts.coverage_path.empty()) {
        coverage = load_coverage(opts.coverage_path, format);
    }
    const std::vector<ApfdRecord> records =
        evaluate_orderings(orderings, kills, coverage ? &*coverage : nullptr);
    if (opts.out_path.empty()) {
        write_apfd_csv(std::cout, records);
    } else {
        auto out = open_out(opts.out_path);
        write_apfd_csv(out, records);
    }
    return kExitOk;
}

std::vector<ApfdRecord> load_single_strategy_csv(const std::string& path,
                                                 const std::string& wanted) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<ApfdRecord> records;
    try {
        records = read_apfd_csv(in);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
    if (records.empty()) throw InputError(path + ": no records");
    if (!wanted.empty()) {
        const auto id = parse_strategy(wanted);
        if (!id) throw InputError("unknown strategy '" + wanted + "'");
        std::erase_if(records, [&](const ApfdRecord& r) { return r.strategy != *id; });
        if (records.empty()) {
            throw InputError(path + ": no records for strategy '" + wanted + "'");
        }
        return records;
    }
    for (const auto& r : records) {
        if (r.strategy != records.front().strategy) {
            throw InputError(path + ": multiple strategies present; use the strategy "
                                    "filter flag to pick one");
        }
    }
    return records;
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& strategy_a, const std::string& strategy_b, double alpha,
                const std::string& out_path) {
    const auto a = load_single_strategy_csv(a_path, strategy_a);
    const auto b = load_single_strategy_csv(b_path, strategy_b);
    const StatSummary summary = compare(std::span<const ApfdRecord>(a),
                                        std::span<const ApfdRecord>(b), alpha);
    const auto label_a = std::string(strategy_name(a.front().strategy));
    const auto label_b = std::string(strategy_name(b.front().strategy));
    std::cout << format_comparison_text(label_a, label_b, summary) << '\n';
    if (!out_path.empty()) {
        auto out = open_out(out_path);
        write_comparison_csv(out, label_a, label_b, summary);
    }
    return kExitOk;
}

int cmd_bench(const CommonOpts& opts, std::size_t warmup, const std::string& pairs_path) {
    if (opts.coverage_path.empty()) throw InputError("--coverage is required");
    const CoverageMatrix matrix = load_coverage(opts.coverage_path, format_of(opts.format));
    ExperimentPlan plan;
    plan.strategies = strategies_of(opts.strategy_names);
    plan.repeats = opts.repeats;
    plan.base_seed = opts.seed;
    plan.config = opts.config;
    const std::vector<Ordering> orderings = run_bench(matrix, plan, warmup);
    const std::vector<EfficiencyRow> rows = summarize_efficiency(orderings);

    std::cout << format_efficiency_table(rows);
    std::ostringstream pairs_csv;
    pairs_csv << "strategy_a,strategy_b,time_improvement,recompute_ratio\n";
    for (const auto& a : rows) {
        for (const auto& b : rows) {
            if (a.strategy == b.strategy) continue;
            const double time_gain = improvement_ratio(a.mean_elapsed_ns, b.mean_elapsed_ns);
            const double rc_ratio = b.mean_recompute_count == 0.0
                                        ? 0.0
                                        : a.mean_recompute_count / b.mean_recompute_count;
            char line[160];
            std::snprintf(line, sizeof(line),
                          "%s vs %s: time improvement %.1f%%, recompute ratio %.3f\n",
                          std::string(strategy_name(a.strategy)).c_str(),
                          std::string(strategy_name(b.strategy)).c_str(), 100.0 * time_gain,
                          rc_ratio);
            std::cout << line;
            pairs_csv << strategy_name(a.strategy) << ',' << strategy_name(b.strategy)
                      << ',' << time_gain << ',' << rc_ratio << '\n';
        }
    }
    if (!opts.out_path.empty()) {
        auto out = open_out(opts.out_path);
        write_efficiency_csv(out, rows);
    }
    if (!pairs_path.empty()) {
        auto out = open_out(pairs_path);
        out << pairs_csv.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage-based regression test prioritization toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    SynthSpec spec;
    std::string orderings_path;
    std::string compare_a, compare_b, strategy_a, strategy_b;
    double alpha = 0.05;
    std::size_t warmup = 3;
    std::string pairs_path;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic coverage/kill instance");
    synth->add_option("--tests", spec.tests, "Number of tests")->required();
    synth->add_option("--units", spec.units, "Number of code units")->required();
    synth->add_option("--density", spec.density, "Coverage probability per bit (0,1]");
    synth->add_option("--faults", spec.faults, "Number of detected faults");
    synth->add_option("--coupling", spec.fault_coupling,
                      "Probability a test covering a fault's anchor unit kills it (0,1]");
    synth->add_option("--seed", spec.seed, "Generator seed");
    synth->add_option("--coverage", opts.coverage_path, "Coverage output path")->required();
    synth->add_option("--kill", opts.kill_path, "Kill matrix output path");
    synth->add_option("--format", opts.format, "tsv|json");

    auto* prioritize =
        app.add_subcommand("prioritize", "Run strategies repeatedly over a coverage matrix");
    prioritize->add_option("--coverage", opts.coverage_path, "Coverage input path")
        ->required();
    prioritize->add_option("--format", opts.format, "tsv|json");
    prioritize->add_option("--out", opts.out_path, "Orderings JSONL path (default stdout)");
    add_strategy_flags(prioritize, opts);

    auto* evaluate = app.add_subcommand("evaluate", "Compute APFD for recorded orderings");
    evaluate->add_option("--orderings", orderings_path, "Orderings JSONL path")->required();
    evaluate->add_option("--kill", opts.kill_path, "Kill matrix path")->required();
    evaluate->add_option("--coverage", opts.coverage_path,
                         "Optional coverage path for test-universe checking");
    evaluate->add_option("--format", opts.format, "tsv|json");
    evaluate->add_option("--out", opts.out_path, "APFD CSV path (default stdout)");

    auto* cmp = app.add_subcommand("compare", "Mann-Whitney / A12 verdict over two APFD CSVs");
    cmp->add_option("csv_a", compare_a, "First sample CSV (strategy,seed,apfd)")->required();
    cmp->add_option("csv_b", compare_b, "Second sample CSV")->required();
    cmp->add_option("--strategy-a", strategy_a, "Pick one strategy out of csv_a");
    cmp->add_option("--strategy-b", strategy_b, "Pick one strategy out of csv_b");
    cmp->add_option("--alpha", alpha, "Significance level");
    cmp->add_option("--out", opts.out_path, "Verdict CSV path");

    auto* bench = app.add_subcommand("bench", "Timed strategy runs with warmup");
    bench->add_option("--coverage", opts.coverage_path, "Coverage input path")->required();
    bench->add_option("--format", opts.format, "tsv|json");
    bench->add_option("--warmup", warmup, "Discarded warmup runs per strategy");
    bench->add_option("--out", opts.out_path, "Efficiency CSV path");
    bench->add_option("--pairs-out", pairs_path, "Pairwise improvement CSV path");
    add_strategy_flags(bench, opts);
    opts.repeats = 1000;  // prioritize default; bench overrides below
    bench->parse_complete_callback([&] {
        if (bench->count("--repeats") == 0) opts.repeats = 20;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (synth->parsed()) return cmd_synth(opts, spec);
        if (prioritize->parsed()) return cmd_prioritize(opts);
        if (evaluate->parsed()) return cmd_evaluate(opts, orderings_path);
        if (cmp->parsed())
            return cmd_compare(compare_a, compare_b, strategy_a, strategy_b, alpha,
                               opts.out_path);
        if (bench->parsed()) return cmd_bench(opts, warmup, pairs_path);
        throw InternalError("no subcommand dispatched");
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
