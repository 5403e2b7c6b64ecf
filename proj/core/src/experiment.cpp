#include "tcprio/experiment.hpp"

#include "tcprio/rng.hpp"

namespace tcprio {

std::uint64_t derive_run_seed(std::uint64_t base_seed, StrategyId strategy,
                              std::uint64_t run) {
    return base_seed ^ fnv1a64(strategy_name(strategy)) ^ run;
}

namespace {

void validate_plan(const ExperimentPlan& plan) {
    if (plan.strategies.empty()) {
        throw InputError("plan needs at least one strategy");
    }
    if (plan.repeats == 0) {
        throw InputError("repeats must be >= 1");
    }
    validate_config(plan.config);
}

}  // namespace

std::vector<Ordering> run_plan(const CoverageMatrix& matrix, const ExperimentPlan& plan) {
    validate_plan(plan);
    std::vector<Ordering> out;
    out.reserve(plan.strategies.size() * plan.repeats);
    for (const StrategyId strategy : plan.strategies) {
        for (std::uint64_t run = 0; run < plan.repeats; ++run) {
            out.push_back(run_strategy(strategy, matrix, plan.config,
                                       derive_run_seed(plan.base_seed, strategy, run)));
        }
    }
    return out;
}

std::vector<Ordering> run_bench(const CoverageMatrix& matrix, const ExperimentPlan& plan,
                                std::size_t warmup) {
    validate_plan(plan);
    std::vector<Ordering> out;
    out.reserve(plan.strategies.size() * plan.repeats);
    for (const StrategyId strategy : plan.strategies) {
        for (std::uint64_t w = 0; w < warmup; ++w) {
            run_strategy(strategy, matrix, plan.config,
                         derive_run_seed(plan.base_seed, strategy, w));
        }
        for (std::uint64_t run = 0; run < plan.repeats; ++run) {
            out.push_back(run_strategy(strategy, matrix, plan.config,
                                       derive_run_seed(plan.base_seed, strategy, run)));
        }
    }
    return out;
}

std::vector<ApfdRecord> evaluate_orderings(std::span<const Ordering> orderings,
                                           const KillMatrix& kills,
                                           const CoverageMatrix* coverage) {
    if (coverage != nullptr) {
        const std::size_t shared = std::min(coverage->test_count(), kills.test_count());
        for (std::size_t i = 0; i < shared; ++i) {
            if (coverage->test_name(i) != kills.test_name(i)) {
                throw InputError("test universe mismatch at index " + std::to_string(i) +
                                 ": coverage has '" + coverage->test_name(i) +
                                 "', kill matrix has '" + kills.test_name(i) + "'");
            }
        }
        if (coverage->test_count() != kills.test_count()) {
            const bool cov_larger = coverage->test_count() > kills.test_count();
            const auto& name = cov_larger ? coverage->test_name(shared)
                                          : kills.test_name(shared);
            throw InputError("test universe mismatch: '" + name + "' is only in the " +
                             (cov_larger ? "coverage" : "kill") + " matrix");
        }
    }
    std::vector<ApfdRecord> records;
    records.reserve(orderings.size());
    for (const auto& ordering : orderings) {
        records.push_back(apfd(ordering, kills));
    }
    return records;
}

}  // namespace tcprio
