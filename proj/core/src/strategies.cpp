#include "tcprio/strategies.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

#include "tcprio/evaluation.hpp"
#include "tcprio/rng.hpp"

namespace tcprio {

namespace {

constexpr double kScoreTieTolerance = 1e-12;

/// Uniform pick among tied winners; counts the tie when two or more shared
/// the best score.
std::size_t pick_tied(std::span<const std::size_t> winners, Rng& rng,
                      std::uint64_t& tie_count) {
    internal_check(!winners.empty(), "selection with empty winner set");
    if (winners.size() == 1) return winners[0];
    ++tie_count;
    return winners[rng.index(winners.size())];
}

std::vector<std::size_t> iota_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

bool any_row_nonempty(const CoverageMatrix& matrix, std::span<const std::size_t> tests) {
    return std::any_of(tests.begin(), tests.end(),
                       [&](std::size_t t) { return matrix.row_popcount(t) > 0; });
}

}  // namespace

void validate_config(const StrategyConfig& config) {
    if (!(config.unified_ratio >= 0.0 && config.unified_ratio <= 1.0)) {
        throw InputError("unified ratio must be in [0, 1]");
    }
    if (config.art_candidate_size == 0) {
        throw InputError("art candidate size must be >= 1");
    }
    const GaParams& ga = config.ga;
    if (ga.population == 0) throw InputError("ga population must be >= 1");
    if (ga.generations == 0) throw InputError("ga generations must be >= 1");
    if (!(ga.crossover_rate >= 0.0 && ga.crossover_rate <= 1.0)) {
        throw InputError("ga crossover rate must be in [0, 1]");
    }
    if (!(ga.mutation_rate >= 0.0 && ga.mutation_rate <= 1.0)) {
        throw InputError("ga mutation rate must be in [0, 1]");
    }
    if (ga.tournament_size == 0) throw InputError("ga tournament size must be >= 1");
}

PartitionState::PartitionState(std::size_t test_count, std::size_t initial_value)
    : stored_(test_count, static_cast<std::int64_t>(initial_value)), remaining_(test_count) {
    internal_check(test_count > 0, "PartitionState needs at least one test");
    buckets_[initial_value] = iota_indices(test_count);
}

std::size_t PartitionState::stored(std::size_t test) const {
    internal_check(test < stored_.size() && stored_[test] >= 0,
                   "PartitionState: test not present");
    return static_cast<std::size_t>(stored_[test]);
}

void PartitionState::detach(std::size_t test, std::size_t value) {
    const auto it = buckets_.find(value);
    internal_check(it != buckets_.end(), "PartitionState: bucket missing");
    std::erase(it->second, test);
    if (it->second.empty()) buckets_.erase(it);
}

void PartitionState::refile(std::size_t test, std::size_t value) {
    const std::size_t old = stored(test);
    internal_check(value <= old, "PartitionState: stored value may not increase");
    if (value == old) return;
    detach(test, old);
    buckets_[value].push_back(test);
    stored_[test] = static_cast<std::int64_t>(value);
}

void PartitionState::remove(std::size_t test) {
    detach(test, stored(test));
    stored_[test] = -1;
    --remaining_;
}

void PartitionState::reset_all(std::size_t value) {
    buckets_.clear();
    auto& bucket = buckets_[value];
    for (std::size_t t = 0; t < stored_.size(); ++t) {
        if (stored_[t] >= 0) {
            stored_[t] = static_cast<std::int64_t>(value);
            bucket.push_back(t);
        }
    }
    if (bucket.empty()) buckets_.clear();
}

std::optional<std::size_t> PartitionState::next_level_below(std::size_t below) const {
    const auto it = buckets_.upper_bound(below);  // first key < below (descending map)
    if (it == buckets_.end()) return std::nullopt;
    return it->first;
}

std::optional<std::size_t> PartitionState::highest_level() const {
    if (buckets_.empty()) return std::nullopt;
    return buckets_.begin()->first;
}

std::span<const std::size_t> PartitionState::members(std::size_t value) const {
    const auto it = buckets_.find(value);
    internal_check(it != buckets_.end(), "PartitionState: bucket missing");
    return it->second;
}

std::vector<std::pair<std::size_t, std::vector<std::size_t>>> PartitionState::levels() const {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> out;
    out.reserve(buckets_.size());
    for (const auto& [value, members] : buckets_) out.emplace_back(value, members);
    return out;
}

Ordering total_greedy(const CoverageMatrix& matrix, std::uint64_t seed) {
    const std::size_t n = matrix.test_count();
    Ordering out{StrategyId::Total, seed};
    Rng rng(seed);

    std::vector<std::size_t> order = iota_indices(n);
    std::vector<std::size_t> pop(n);
    for (std::size_t t = 0; t < n; ++t) pop[t] = matrix.row(t).popcount();
    out.instrumentation.recompute_count = n;

    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a] > pop[b]; });
    // Shuffling each equal-popcount run is equivalent to repeated uniform
    // picks among the tied maximum; a run of g tests sees g-1 tied selections.
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && pop[order[end]] == pop[order[start]]) ++end;
        if (end - start > 1) {
            out.instrumentation.tie_count += end - start - 1;
            rng.shuffle(std::span<std::size_t>(order).subspan(start, end - start));
        }
        start = end;
    }
    out.permutation = std::move(order);
    return out;
}

Ordering additional_greedy(const CoverageMatrix& matrix, std::uint64_t seed) {
    const std::size_t n = matrix.test_count();
    Ordering out{StrategyId::Additional, seed};
    Rng rng(seed);
    Instrumentation& inst = out.instrumentation;

    BitRow covered(matrix.unit_count());
    std::vector<std::size_t> remaining = iota_indices(n);
    std::vector<std::size_t> winners;
    out.permutation.reserve(n);

    while (!remaining.empty()) {
        std::int64_t best = -1;
        for (;;) {
            best = -1;
            winners.clear();
            for (const std::size_t t : remaining) {
                const auto add =
                    static_cast<std::int64_t>(matrix.row(t).andnot_popcount(covered));
                ++inst.recompute_count;
                if (add > best) {
                    best = add;
                    winners.assign(1, t);
                } else if (add == best) {
                    winners.push_back(t);
                }
            }
            if (best > 0) break;
            // No candidate adds coverage. Restart only if some remaining test
            // covers anything at all; otherwise the leftovers are genuinely
            // empty rows and get selected as ties at zero.
            if (!any_row_nonempty(matrix, remaining)) break;
            covered.clear();
            ++inst.restart_count;
        }
        const std::size_t pick = pick_tied(winners, rng, inst.tie_count);
        covered.or_assign(matrix.row(pick));
        std::erase(remaining, pick);
        out.permutation.push_back(pick);
    }
    return out;
}

Ordering ocp(const CoverageMatrix& matrix, std::uint64_t seed) {
    const std::size_t n = matrix.test_count();
    const std::size_t m = matrix.unit_count();
    Ordering out{StrategyId::Ocp, seed};
    Rng rng(seed);
    Instrumentation& inst = out.instrumentation;

    BitRow covered(m);
    PartitionState parts(n, m);
    std::vector<std::size_t> scratch;
    std::vector<std::size_t> winners;
    out.permutation.reserve(n);

    while (!parts.empty()) {
        std::size_t pick = 0;
        for (;;) {
            // One selection pass: walk buckets in descending stored order.
            // A stored value bounds the candidate's current additional
            // coverage, so once the best recomputed value reaches the next
            // bound no lower bucket can win and the scan stops. A tie
            // between buckets goes to the higher previous value; only ties
            // inside one bucket are broken randomly.
            std::int64_t best = -1;
            std::size_t best_level = 0;
            winners.clear();
            std::optional<std::size_t> level = parts.highest_level();
            while (level && *level > 0) {
                const std::size_t v = *level;
                if (best >= static_cast<std::int64_t>(v)) break;
                const auto bucket = parts.members(v);
                scratch.assign(bucket.begin(), bucket.end());
                for (const std::size_t t : scratch) {
                    const auto add =
                        static_cast<std::int64_t>(matrix.row(t).andnot_popcount(covered));
                    ++inst.recompute_count;
                    parts.refile(t, static_cast<std::size_t>(add));
                    if (add > best) {
                        best = add;
                        best_level = v;
                        winners.assign(1, t);
                    } else if (add == best && v == best_level) {
                        winners.push_back(t);
                    }
                }
                level = parts.next_level_below(v);
            }
            if (best > 0) {
                pick = pick_tied(winners, rng, inst.tie_count);
                break;
            }
            // Every stored value is now 0: nothing adds coverage.
            scratch.clear();
            for (std::size_t t = 0; t < n; ++t) {
                if (parts.contains(t)) scratch.push_back(t);
            }
            if (!any_row_nonempty(matrix, scratch)) {
                pick = pick_tied(scratch, rng, inst.tie_count);
                break;
            }
            covered.clear();
            parts.reset_all(m);
            ++inst.restart_count;
        }
        covered.or_assign(matrix.row(pick));
        parts.remove(pick);
        out.permutation.push_back(pick);
    }
    return out;
}

Ordering unified_greedy(const CoverageMatrix& matrix, std::uint64_t seed, double ratio,
                        const ScoreProbe& probe) {
    if (!(ratio >= 0.0 && ratio <= 1.0)) {
        throw InputError("unified ratio must be in [0, 1]");
    }
    const std::size_t n = matrix.test_count();
    Ordering out{StrategyId::Unified, seed};
    Rng rng(seed);
    Instrumentation& inst = out.instrumentation;

    std::vector<double> weight(matrix.unit_count(), 1.0);
    std::vector<std::size_t> remaining = iota_indices(n);
    std::vector<double> scores;
    std::vector<std::size_t> winners;
    out.permutation.reserve(n);

    for (std::size_t step = 0; !remaining.empty(); ++step) {
        scores.clear();
        double best = -1.0;
        for (const std::size_t t : remaining) {
            double s = 0.0;
            matrix.row(t).for_each_set_bit([&](std::size_t j) { s += weight[j]; });
            ++inst.recompute_count;
            scores.push_back(s);
            best = std::max(best, s);
        }
        if (probe) probe(StepScores{step, remaining, scores});
        winners.clear();
        for (std::size_t i = 0; i < remaining.size(); ++i) {
            if (scores[i] >= best - kScoreTieTolerance) winners.push_back(remaining[i]);
        }
        const std::size_t pick = pick_tied(winners, rng, inst.tie_count);
        matrix.row(pick).for_each_set_bit([&](std::size_t j) { weight[j] *= 1.0 - ratio; });
        std::erase(remaining, pick);
        out.permutation.push_back(pick);
    }
    return out;
}

Ordering lexicographical_greedy(const CoverageMatrix& matrix, std::uint64_t seed) {
    const std::size_t n = matrix.test_count();
    Ordering out{StrategyId::Lexicographical, seed};
    Rng rng(seed);
    Instrumentation& inst = out.instrumentation;

    std::vector<std::size_t> times_covered(matrix.unit_count(), 0);
    std::size_t max_count = 0;
    std::vector<std::size_t> remaining = iota_indices(n);
    std::vector<std::size_t> winners;
    std::vector<std::size_t> sig, best_sig;
    out.permutation.reserve(n);

    while (!remaining.empty()) {
        winners.clear();
        best_sig.clear();
        for (const std::size_t t : remaining) {
            // sig[c] = number of units this test covers that are currently
            // covered c times; greatest signature in lexicographic order wins.
            sig.assign(max_count + 1, 0);
            matrix.row(t).for_each_set_bit([&](std::size_t j) { ++sig[times_covered[j]]; });
            ++inst.recompute_count;
            if (winners.empty() || sig > best_sig) {
                best_sig = sig;
                winners.assign(1, t);
            } else if (sig == best_sig) {
                winners.push_back(t);
            }
        }
        const std::size_t pick = pick_tied(winners, rng, inst.tie_count);
        matrix.row(pick).for_each_set_bit(
            [&](std::size_t j) { max_count = std::max(max_count, ++times_covered[j]); });
        std::erase(remaining, pick);
        out.permutation.push_back(pick);
    }
    return out;
}

double jaccard_distance(const BitRow& a, const BitRow& b) {
    const std::size_t unite = a.or_popcount(b);
    if (unite == 0) return 0.0;
    const std::size_t intersect = a.and_popcount(b);
    return 1.0 - static_cast<double>(intersect) / static_cast<double>(unite);
}

Ordering art_based(const CoverageMatrix& matrix, std::uint64_t seed,
                   std::size_t candidate_size) {
    if (candidate_size == 0) {
        throw InputError("art candidate size must be >= 1");
    }
    const std::size_t n = matrix.test_count();
    Ordering out{StrategyId::Art, seed};
    Rng rng(seed);
    Instrumentation& inst = out.instrumentation;

    std::vector<std::size_t> remaining = iota_indices(n);
    std::vector<std::size_t> selected;
    out.permutation.reserve(n);

    const std::size_t first = remaining[rng.index(remaining.size())];
    selected.push_back(first);
    std::erase(remaining, first);
    out.permutation.push_back(first);

    std::vector<std::size_t> pool;
    std::vector<std::size_t> winners;
    while (!remaining.empty()) {
        const std::size_t k = std::min(candidate_size, remaining.size());
        pool = remaining;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + rng.index(pool.size() - i);
            std::swap(pool[i], pool[j]);
        }
        double best = -1.0;
        winners.clear();
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t t = pool[i];
            double dist = std::numeric_limits<double>::infinity();
            for (const std::size_t s : selected) {
                dist = std::min(dist, jaccard_distance(matrix.row(t), matrix.row(s)));
            }
            ++inst.recompute_count;
            if (dist > best) {
                best = dist;
                winners.assign(1, t);
            } else if (dist == best) {
                winners.push_back(t);
            }
        }
        const std::size_t pick = pick_tied(winners, rng, inst.tie_count);
        selected.push_back(pick);
        std::erase(remaining, pick);
        out.permutation.push_back(pick);
    }
    return out;
}

namespace {

/// Partially mapped crossover: child takes p1's segment, the rest follows
/// p2 through the segment mapping.
std::vector<std::size_t> pmx_cross(std::span<const std::size_t> p1,
                                   std::span<const std::size_t> p2, Rng& rng) {
    const std::size_t n = p1.size();
    std::size_t c1 = rng.index(n);
    std::size_t c2 = rng.index(n);
    if (c1 > c2) std::swap(c1, c2);

    std::vector<std::size_t> pos2(n);
    for (std::size_t i = 0; i < n; ++i) pos2[p2[i]] = i;

    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> child(n, kUnset);
    std::vector<char> in_segment(n, 0);
    for (std::size_t i = c1; i <= c2; ++i) {
        child[i] = p1[i];
        in_segment[p1[i]] = 1;
    }
    for (std::size_t i = c1; i <= c2; ++i) {
        const std::size_t v = p2[i];
        if (in_segment[v]) continue;
        std::size_t j = i;
        do {
            j = pos2[p1[j]];
        } while (j >= c1 && j <= c2);
        child[j] = v;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (child[i] == kUnset) child[i] = p2[i];
    }
    return child;
}

}  // namespace

Ordering search_based(const CoverageMatrix& matrix, std::uint64_t seed, const GaParams& ga) {
    StrategyConfig probe_config;
    probe_config.ga = ga;
    validate_config(probe_config);

    const std::size_t n = matrix.test_count();
    Ordering out{StrategyId::Search, seed};
    Rng rng(seed);
    Instrumentation& inst = out.instrumentation;

    if (n == 1) {
        out.permutation = {0};
        return out;
    }

    const std::size_t pop_size = ga.population;
    std::vector<std::vector<std::size_t>> population(pop_size);
    std::vector<double> fitness(pop_size);
    for (auto& individual : population) {
        individual = iota_indices(n);
        rng.shuffle(std::span<std::size_t>(individual));
    }
    for (std::size_t i = 0; i < pop_size; ++i) {
        fitness[i] = apsc_of_permutation(population[i], matrix);
        ++inst.recompute_count;
    }

    const auto argmax_fitness = [&] {
        return static_cast<std::size_t>(
            std::max_element(fitness.begin(), fitness.end()) - fitness.begin());
    };
    const auto tournament = [&] {
        std::size_t best = rng.index(pop_size);
        for (std::size_t i = 1; i < ga.tournament_size; ++i) {
            const std::size_t challenger = rng.index(pop_size);
            if (fitness[challenger] > fitness[best]) best = challenger;
        }
        return best;
    };

    std::vector<std::vector<std::size_t>> next(pop_size);
    std::vector<double> next_fitness(pop_size);
    for (std::size_t gen = 0; gen < ga.generations; ++gen) {
        const std::size_t elite = argmax_fitness();
        next[0] = population[elite];
        next_fitness[0] = fitness[elite];
        for (std::size_t i = 1; i < pop_size; ++i) {
            const auto& p1 = population[tournament()];
            const auto& p2 = population[tournament()];
            std::vector<std::size_t> child = rng.next_double() < ga.crossover_rate
                                                 ? pmx_cross(p1, p2, rng)
                                                 : p1;
            if (rng.next_double() < ga.mutation_rate) {
                const std::size_t a = rng.index(n);
                const std::size_t b = rng.index(n);
                std::swap(child[a], child[b]);
            }
            next_fitness[i] = apsc_of_permutation(child, matrix);
            ++inst.recompute_count;
            next[i] = std::move(child);
        }
        population.swap(next);
        fitness.swap(next_fitness);
    }
    out.permutation = population[argmax_fitness()];
    return out;
}

Ordering run_strategy(StrategyId id, const CoverageMatrix& matrix,
                      const StrategyConfig& config, std::uint64_t seed) {
    validate_config(config);
    Ordering out;
    const auto start = std::chrono::steady_clock::now();
    switch (id) {
        case StrategyId::Total: out = total_greedy(matrix, seed); break;
        case StrategyId::Additional: out = additional_greedy(matrix, seed); break;
        case StrategyId::Unified:
            out = unified_greedy(matrix, seed, config.unified_ratio);
            break;
        case StrategyId::Lexicographical: out = lexicographical_greedy(matrix, seed); break;
        case StrategyId::Art: out = art_based(matrix, seed, config.art_candidate_size); break;
        case StrategyId::Search: out = search_based(matrix, seed, config.ga); break;
        case StrategyId::Ocp: out = ocp(matrix, seed); break;
        default: throw InternalError("unknown strategy id");
    }
    const auto end = std::chrono::steady_clock::now();
    out.instrumentation.elapsed_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(end - start).count());
    validate_permutation(out, matrix.test_count());
    return out;
}

}  // namespace tcprio
