#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tcprio/coverage_model.hpp"
#include "tcprio/rng.hpp"

namespace tcprio::testing {

inline CoverageMatrix make_matrix(
    std::size_t units,
    const std::vector<std::pair<std::string, std::vector<std::size_t>>>& rows) {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> covers;
    names.reserve(rows.size());
    covers.reserve(rows.size());
    for (const auto& [name, list] : rows) {
        names.push_back(name);
        covers.push_back(list);
    }
    return CoverageMatrix::from_lists(std::move(names), units, covers);
}

/// Four tests over six units with popcounts (2, 4, 2, 3): the greedy
/// tie-breaking workbench used across the strategy tests. A maximal-coverage
/// pick takes t2 first; t3 and t4 then tie at one additional unit each.
inline CoverageMatrix make_m0() {
    return make_matrix(6, {
                              {"t1", {0, 2}},
                              {"t2", {0, 2, 3, 5}},
                              {"t3", {1, 2}},
                              {"t4", {0, 3, 4}},
                          });
}

/// Single fault detected only by t4 (index 3).
inline KillMatrix make_m0_kills() {
    return KillMatrix::from_lists({"t1", "t2", "t3", "t4"}, 1, {{}, {}, {}, {0}});
}

inline CoverageMatrix random_matrix(Rng& rng, std::size_t tests, std::size_t units,
                                    double density) {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> covers(tests);
    names.reserve(tests);
    for (std::size_t i = 0; i < tests; ++i) {
        names.push_back("t" + std::to_string(i));
        for (std::size_t j = 0; j < units; ++j) {
            if (rng.next_double() < density) covers[i].push_back(j);
        }
    }
    return CoverageMatrix::from_lists(std::move(names), units, covers);
}

/// Ordering with elapsed_ns zeroed, for determinism comparisons that must
/// ignore wall time.
inline Ordering masked(Ordering ordering) {
    ordering.instrumentation.elapsed_ns = 0;
    return ordering;
}

}  // namespace tcprio::testing
