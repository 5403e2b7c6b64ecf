#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tcprio/bitrow.hpp"
#include "tcprio/errors.hpp"

namespace tcprio {

/// Boolean test x code-unit matrix: row i bit j is true iff test i covers
/// unit j. The sole input to every prioritization strategy. Immutable after
/// construction and safe to share across threads.
class CoverageMatrix {
public:
    CoverageMatrix(std::vector<std::string> test_names, std::size_t unit_count,
                   std::vector<BitRow> rows);

    /// Builds rows from per-test lists of covered unit indices.
    static CoverageMatrix from_lists(std::vector<std::string> test_names,
                                     std::size_t unit_count,
                                     const std::vector<std::vector<std::size_t>>& covers);

    std::size_t test_count() const { return rows_.size(); }
    std::size_t unit_count() const { return unit_count_; }

    const BitRow& row(std::size_t test) const { return rows_[test]; }
    const std::string& test_name(std::size_t test) const { return test_names_[test]; }
    std::span<const std::string> test_names() const { return test_names_; }

    bool covers(std::size_t test, std::size_t unit) const { return rows_[test].test(unit); }
    std::size_t row_popcount(std::size_t test) const { return popcounts_[test]; }
    std::size_t max_row_popcount() const;

    bool operator==(const CoverageMatrix&) const = default;

private:
    std::vector<std::string> test_names_;
    std::size_t unit_count_ = 0;
    std::vector<BitRow> rows_;
    std::vector<std::size_t> popcounts_;
};

/// Boolean test x fault matrix: row i bit f is true iff test i detects
/// (kills) fault f. Every fault column must have at least one killer;
/// undetected faults are rejected at construction, mirroring the usual
/// pre-filtering of mutants no test kills.
class KillMatrix {
public:
    KillMatrix(std::vector<std::string> test_names, std::size_t fault_count,
               std::vector<BitRow> rows);

    static KillMatrix from_lists(std::vector<std::string> test_names,
                                 std::size_t fault_count,
                                 const std::vector<std::vector<std::size_t>>& kills);

    std::size_t test_count() const { return rows_.size(); }
    std::size_t fault_count() const { return fault_count_; }

    const BitRow& row(std::size_t test) const { return rows_[test]; }
    const std::string& test_name(std::size_t test) const { return test_names_[test]; }
    std::span<const std::string> test_names() const { return test_names_; }

    bool kills(std::size_t test, std::size_t fault) const { return rows_[test].test(fault); }

    bool operator==(const KillMatrix&) const = default;

private:
    std::vector<std::string> test_names_;
    std::size_t fault_count_ = 0;
    std::vector<BitRow> rows_;
};

/// Named, disjoint, exhaustive grouping of test indices (e.g. test methods
/// rolled up into their test class). Groups are kept sorted by identifier so
/// aggregation output order is stable.
class GroupMap {
public:
    using Group = std::pair<std::string, std::vector<std::size_t>>;

    /// Validates that the groups partition {0..test_count-1} and sorts them
    /// by group identifier.
    GroupMap(std::vector<Group> groups, std::size_t test_count);

    std::size_t group_count() const { return groups_.size(); }
    const Group& group(std::size_t i) const { return groups_[i]; }
    std::span<const Group> groups() const { return groups_; }

private:
    std::vector<Group> groups_;
};

/// Row aggregation: one output row per group, the bitwise OR of the member
/// rows. Used to move between test-method and test-class granularity.
CoverageMatrix aggregate_rows(const CoverageMatrix& matrix, const GroupMap& groups);

enum class StrategyId {
    Total,
    Additional,
    Unified,
    Lexicographical,
    Art,
    Search,
    Ocp,
};

inline constexpr StrategyId kAllStrategies[] = {
    StrategyId::Total,       StrategyId::Additional, StrategyId::Unified,
    StrategyId::Lexicographical, StrategyId::Art,    StrategyId::Search,
    StrategyId::Ocp,
};

std::string_view strategy_name(StrategyId id);
std::optional<StrategyId> parse_strategy(std::string_view name);

/// Counters recorded while a strategy runs. recompute_count is the number of
/// candidate priority evaluations (the hardware-independent cost proxy);
/// elapsed_ns is wall time around the prioritization loop only.
struct Instrumentation {
    std::uint64_t recompute_count = 0;
    std::uint64_t tie_count = 0;
    std::uint64_t restart_count = 0;
    std::uint64_t elapsed_ns = 0;

    bool operator==(const Instrumentation&) const = default;
};

/// A prioritized run: a permutation of test indices plus how it was made.
struct Ordering {
    StrategyId strategy = StrategyId::Total;
    std::uint64_t seed = 0;
    std::vector<std::size_t> permutation;
    Instrumentation instrumentation;

    bool operator==(const Ordering&) const = default;
};

/// Throws InternalError unless ordering.permutation is a bijection on
/// {0..n-1}.
void validate_permutation(const Ordering& ordering, std::size_t test_count);

}  // namespace tcprio
