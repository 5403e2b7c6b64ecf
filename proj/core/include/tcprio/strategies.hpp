#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "tcprio/coverage_model.hpp"

namespace tcprio {

struct GaParams {
    std::size_t population = 50;
    std::size_t generations = 100;
    double crossover_rate = 0.8;
    double mutation_rate = 0.1;
    std::size_t tournament_size = 2;
};

struct StrategyConfig {
    double unified_ratio = 0.5;
    std::size_t art_candidate_size = 10;
    GaParams ga;
};

/// Throws InputError when a parameter is out of range.
void validate_config(const StrategyConfig& config);

/// Candidate tests bucketed by the additional-coverage value last computed
/// for them. Because additional coverage never increases between restarts,
/// a stored value is an upper bound on the candidate's current value, which
/// is what lets the partition-ordering strategy skip low buckets.
class PartitionState {
public:
    PartitionState(std::size_t test_count, std::size_t initial_value);

    std::size_t size() const { return remaining_; }
    bool empty() const { return remaining_ == 0; }
    bool contains(std::size_t test) const { return stored_[test] >= 0; }
    std::size_t stored(std::size_t test) const;

    /// Moves a candidate to a new bucket. The new value must not exceed the
    /// stored one (monotone non-increase between restarts).
    void refile(std::size_t test, std::size_t value);

    void remove(std::size_t test);

    /// Restart: every remaining candidate back to `value` (index order).
    void reset_all(std::size_t value);

    /// Largest distinct stored value strictly below `below`, or nullopt.
    std::optional<std::size_t> next_level_below(std::size_t below) const;
    std::optional<std::size_t> highest_level() const;

    /// Members of a bucket, in insertion order.
    std::span<const std::size_t> members(std::size_t value) const;

    /// Distinct stored values, descending, with their member lists.
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> levels() const;

private:
    void detach(std::size_t test, std::size_t value);

    std::map<std::size_t, std::vector<std::size_t>, std::greater<>> buckets_;
    std::vector<std::int64_t> stored_;  // -1 = selected/removed
    std::size_t remaining_ = 0;
};

/// Per-step view of candidate scores, exposed so tests can check scoring
/// models without re-deriving internal state.
struct StepScores {
    std::size_t step;
    std::span<const std::size_t> candidates;
    std::span<const double> scores;
};
using ScoreProbe = std::function<void(const StepScores&)>;

// The seven strategies. Each is a pure function of (matrix, seed, params):
// the same inputs always produce a bit-identical Ordering. elapsed_ns is
// filled in by run_strategy.

/// Descending row popcount, uniform random tie-break.
Ordering total_greedy(const CoverageMatrix& matrix, std::uint64_t seed);

/// Max units not yet covered; covered set resets when no candidate adds
/// anything and some remaining test still covers a unit.
Ordering additional_greedy(const CoverageMatrix& matrix, std::uint64_t seed);

/// Lazy additional-greedy over a PartitionState: rescans buckets in
/// descending stored order and stops as soon as the best recomputed value
/// reaches every remaining stored bound. Every pick still attains the
/// global maximum additional coverage. Ties between buckets resolve to the
/// higher previous value; ties inside a bucket are random.
Ordering ocp(const CoverageMatrix& matrix, std::uint64_t seed);

/// Unit weights start at 1 and decay by (1 - ratio) each time a selected
/// test covers the unit; candidate score is the sum of covered weights.
/// ratio = 0 reproduces total-greedy scores, ratio = 1 additional-greedy
/// scores. Scores tie within an absolute tolerance of 1e-12.
Ordering unified_greedy(const CoverageMatrix& matrix, std::uint64_t seed, double ratio,
                        const ScoreProbe& probe = {});

/// Compares candidates by the signature (units covered that were covered 0
/// times so far, 1 time, 2 times, ...), lexicographically greatest first.
Ordering lexicographical_greedy(const CoverageMatrix& matrix, std::uint64_t seed);

/// Adaptive random: random candidate subset each step, pick the candidate
/// with the greatest minimum Jaccard distance to the already selected tests.
Ordering art_based(const CoverageMatrix& matrix, std::uint64_t seed,
                   std::size_t candidate_size);

/// Genetic search over permutations with PMX crossover, swap mutation,
/// tournament selection and elitism; fitness is APSC.
Ordering search_based(const CoverageMatrix& matrix, std::uint64_t seed, const GaParams& ga);

/// 1 - |A & B| / |A | B|; defined as 0 when both rows are empty.
double jaccard_distance(const BitRow& a, const BitRow& b);

/// Dispatch by id; stamps seed and elapsed_ns (monotonic clock around the
/// prioritization loop only).
Ordering run_strategy(StrategyId id, const CoverageMatrix& matrix,
                      const StrategyConfig& config, std::uint64_t seed);

}  // namespace tcprio
