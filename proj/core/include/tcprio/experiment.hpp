#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcprio/coverage_model.hpp"
#include "tcprio/evaluation.hpp"
#include "tcprio/strategies.hpp"

namespace tcprio {

/// A repeated-prioritization experiment: every strategy is run `repeats`
/// times with per-run seeds derived from `base_seed`.
struct ExperimentPlan {
    std::vector<StrategyId> strategies;
    std::size_t repeats = 1000;
    std::uint64_t base_seed = 0;
    StrategyConfig config;
};

/// Per-run seed: base_seed XOR fnv1a64(strategy name) XOR run index.
/// Stable and documented so runs can be reproduced (or parallelized)
/// independently of execution order.
std::uint64_t derive_run_seed(std::uint64_t base_seed, StrategyId strategy, std::uint64_t run);

/// Runs the plan serially in (strategy, run) order. Output order is part of
/// the contract: identical plans produce identical record sequences.
std::vector<Ordering> run_plan(const CoverageMatrix& matrix, const ExperimentPlan& plan);

/// Like run_plan but discards `warmup` unrecorded runs per strategy first,
/// so timing fields are not polluted by cold caches.
std::vector<Ordering> run_bench(const CoverageMatrix& matrix, const ExperimentPlan& plan,
                                std::size_t warmup = 3);

/// APFD for each ordering against the kill matrix. When `coverage` is given
/// its test universe is checked against the kill matrix's, and mismatches
/// name the offending test.
std::vector<ApfdRecord> evaluate_orderings(std::span<const Ordering> orderings,
                                           const KillMatrix& kills,
                                           const CoverageMatrix* coverage = nullptr);

}  // namespace tcprio
