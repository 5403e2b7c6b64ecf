#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "tcprio/coverage_model.hpp"

namespace tcprio {

struct ApfdRecord {
    StrategyId strategy = StrategyId::Total;
    std::uint64_t seed = 0;
    double apfd = 0.0;
    std::size_t test_count = 0;
    std::size_t fault_count = 0;
};

/// APFD = 1 - sum(TF_i) / (n * m) + 1 / (2n), TF_i the 1-based position of
/// the first test in the ordering that kills fault i. Requires every fault
/// to have a killer (enforced by KillMatrix) and the ordering to cover the
/// kill matrix's test universe.
ApfdRecord apfd(const Ordering& ordering, const KillMatrix& kills);

/// Coverage analogue of APFD over code units; units never covered count as
/// first covered at position n + 1. The degenerate all-empty matrix yields
/// -1/(2n) by the same formula, not a clamped value.
double apsc(const Ordering& ordering, const CoverageMatrix& matrix);
double apsc_of_permutation(std::span<const std::size_t> permutation,
                           const CoverageMatrix& matrix);

struct EfficiencyRow {
    StrategyId strategy;
    std::size_t runs = 0;
    double mean_elapsed_ns = 0.0;
    double median_elapsed_ns = 0.0;
    double mean_recompute_count = 0.0;
    double mean_tie_count = 0.0;
    double mean_restart_count = 0.0;
};

/// Per-strategy aggregates over a batch of runs, ordered by first
/// appearance in the input.
std::vector<EfficiencyRow> summarize_efficiency(std::span<const Ordering> orderings);

/// 1 - mean(a) / mean(b): the fraction of b's cost that a saves.
double improvement_ratio(double mean_a, double mean_b);

// CSV surface: "strategy,seed,apfd" rows with a header line.
void write_apfd_csv(std::ostream& out, std::span<const ApfdRecord> records);
std::vector<ApfdRecord> read_apfd_csv(std::istream& in);

void write_efficiency_csv(std::ostream& out, std::span<const EfficiencyRow> rows);
std::string format_efficiency_table(std::span<const EfficiencyRow> rows);

}  // namespace tcprio
