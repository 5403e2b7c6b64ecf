#pragma once

// Independent oracles for the strategy and statistics tests. Everything here
// recomputes from first principles with naive per-bit / per-pair loops and
// must stay decoupled from the packed-word implementation paths it checks.

#include <algorithm>
#include <cstddef>
#include <span>
#include <unordered_map>
#include <vector>

#include "tcprio/coverage_model.hpp"

namespace tcprio::testing {

inline std::size_t naive_additional(const CoverageMatrix& matrix,
                                    const std::vector<char>& covered, std::size_t test) {
    std::size_t add = 0;
    for (std::size_t j = 0; j < matrix.unit_count(); ++j) {
        if (matrix.covers(test, j) && !covered[j]) ++add;
    }
    return add;
}

inline std::size_t naive_popcount(const CoverageMatrix& matrix, std::size_t test) {
    std::size_t count = 0;
    for (std::size_t j = 0; j < matrix.unit_count(); ++j) {
        if (matrix.covers(test, j)) ++count;
    }
    return count;
}

struct ReplayStep {
    std::size_t picked = 0;
    std::size_t picked_additional = 0;
    std::size_t max_additional = 0;
    bool restart_before = false;
    std::vector<std::size_t> remaining;
    std::vector<std::size_t> additional;  // aligned with remaining
};

struct Replay {
    std::vector<ReplayStep> steps;
    std::size_t restart_count = 0;
};

/// Replays a permutation under additional-greedy semantics, recomputing every
/// candidate's additional coverage per step. The covered set resets when
/// nothing adds coverage and some remaining test still covers a unit.
inline Replay replay_trajectory(const CoverageMatrix& matrix,
                                std::span<const std::size_t> permutation) {
    Replay replay;
    std::vector<char> covered(matrix.unit_count(), 0);
    std::vector<std::size_t> remaining(matrix.test_count());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

    for (const std::size_t picked : permutation) {
        ReplayStep step;
        step.picked = picked;
        for (int round = 0; round < 2; ++round) {
            step.remaining = remaining;
            step.additional.clear();
            step.max_additional = 0;
            for (const std::size_t t : remaining) {
                const std::size_t add = naive_additional(matrix, covered, t);
                step.additional.push_back(add);
                step.max_additional = std::max(step.max_additional, add);
            }
            if (step.max_additional > 0 || round == 1) break;
            const bool any_nonempty =
                std::any_of(remaining.begin(), remaining.end(), [&](std::size_t t) {
                    return naive_popcount(matrix, t) > 0;
                });
            if (!any_nonempty) break;
            std::fill(covered.begin(), covered.end(), 0);
            step.restart_before = true;
            ++replay.restart_count;
        }
        for (std::size_t i = 0; i < step.remaining.size(); ++i) {
            if (step.remaining[i] == picked) {
                step.picked_additional = step.additional[i];
                break;
            }
        }
        for (std::size_t j = 0; j < matrix.unit_count(); ++j) {
            if (matrix.covers(picked, j)) covered[j] = 1;
        }
        std::erase(remaining, picked);
        replay.steps.push_back(std::move(step));
    }
    return replay;
}

/// Every pick attains the maximum additional coverage at its step.
inline bool is_step_optimal(const Replay& replay) {
    for (const auto& step : replay.steps) {
        if (step.picked_additional != step.max_additional) return false;
    }
    return true;
}

/// No candidate's additional coverage grows between consecutive selections
/// unless a restart happened in between.
inline bool is_monotone_nonincreasing(const Replay& replay) {
    std::unordered_map<std::size_t, std::size_t> last;
    for (const auto& step : replay.steps) {
        if (step.restart_before) last.clear();
        for (std::size_t i = 0; i < step.remaining.size(); ++i) {
            const auto it = last.find(step.remaining[i]);
            if (it != last.end() && step.additional[i] > it->second) return false;
        }
        for (std::size_t i = 0; i < step.remaining.size(); ++i) {
            last[step.remaining[i]] = step.additional[i];
        }
        last.erase(step.picked);
    }
    return true;
}

/// O(|a| * |b|) pairwise definition of the Vargha-Delaney effect size.
inline double a12_pairwise(std::span<const double> a, std::span<const double> b) {
    double wins = 0.0;
    for (const double x : a) {
        for (const double y : b) {
            if (x > y) {
                wins += 1.0;
            } else if (x == y) {
                wins += 0.5;
            }
        }
    }
    return wins / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

/// Exact two-tailed Mann-Whitney p for small tie-free samples by explicit
/// enumeration of every rank assignment.
inline double mwu_exact_enumeration(std::span<const double> a, std::span<const double> b) {
    const std::size_t n_a = a.size();
    const std::size_t n_b = b.size();
    const std::size_t total = n_a + n_b;

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());

    // Observed U for sample a.
    std::size_t observed = 0;
    for (const double x : a) {
        for (const double y : b) {
            if (x > y) ++observed;
        }
    }
    const std::size_t u_min = std::min(observed, n_a * n_b - observed);

    // Enumerate all assignments of n_a ranks out of 1..total.
    std::vector<char> mask(total, 0);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n_a), 1);
    std::sort(mask.begin(), mask.end());
    std::size_t arrangements = 0;
    std::size_t at_or_below = 0;
    do {
        std::size_t rank_sum = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (mask[i]) rank_sum += i + 1;
        }
        const std::size_t u = rank_sum - n_a * (n_a + 1) / 2;
        ++arrangements;
        if (u <= u_min) ++at_or_below;
    } while (std::next_permutation(mask.begin(), mask.end()));

    const double p =
        2.0 * static_cast<double>(at_or_below) / static_cast<double>(arrangements);
    return std::min(1.0, p);
}

inline double naive_apsc(const CoverageMatrix& matrix,
                         std::span<const std::size_t> permutation) {
    const std::size_t n = matrix.test_count();
    const std::size_t m = matrix.unit_count();
    double ts_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        std::size_t first = n + 1;
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix.covers(permutation[i], j)) {
                first = i + 1;
                break;
            }
        }
        ts_sum += static_cast<double>(first);
    }
    return 1.0 - ts_sum / (static_cast<double>(n) * static_cast<double>(m)) +
           1.0 / (2.0 * static_cast<double>(n));
}

inline double best_apsc_exhaustive(const CoverageMatrix& matrix) {
    std::vector<std::size_t> perm(matrix.test_count());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    double best = -1.0;
    do {
        best = std::max(best, naive_apsc(matrix, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline double naive_jaccard(const CoverageMatrix& matrix, std::size_t a, std::size_t b) {
    std::size_t inter = 0, unite = 0;
    for (std::size_t j = 0; j < matrix.unit_count(); ++j) {
        const bool in_a = matrix.covers(a, j);
        const bool in_b = matrix.covers(b, j);
        if (in_a && in_b) ++inter;
        if (in_a || in_b) ++unite;
    }
    if (unite == 0) return 0.0;
    return 1.0 - static_cast<double>(inter) / static_cast<double>(unite);
}

}  // namespace tcprio::testing
