#include "tcprio/coverage_model.hpp"

#include <algorithm>
#include <unordered_set>

namespace tcprio {

namespace {

void check_names(std::span<const std::string> names) {
    if (names.empty()) {
        throw InputError("matrix needs at least one test");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& name : names) {
        if (!seen.insert(name).second) {
            throw InputError("duplicate test name: " + name);
        }
    }
}

std::vector<BitRow> rows_from_lists(std::size_t width,
                                    const std::vector<std::vector<std::size_t>>& lists,
                                    const char* what) {
    std::vector<BitRow> rows;
    rows.reserve(lists.size());
    for (const auto& list : lists) {
        BitRow row(width);
        for (const std::size_t idx : list) {
            if (idx >= width) {
                throw InputError(std::string(what) + " index out of range");
            }
            row.set(idx);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

CoverageMatrix::CoverageMatrix(std::vector<std::string> test_names, std::size_t unit_count,
                               std::vector<BitRow> rows)
    : test_names_(std::move(test_names)), unit_count_(unit_count), rows_(std::move(rows)) {
    check_names(test_names_);
    if (unit_count_ == 0) {
        throw InputError("matrix needs at least one code unit");
    }
    if (rows_.size() != test_names_.size()) {
        throw InputError("row count does not match test name count");
    }
    for (const auto& row : rows_) {
        if (row.width() != unit_count_) {
            throw InputError("row width does not match unit count");
        }
    }
    popcounts_.reserve(rows_.size());
    for (const auto& row : rows_) popcounts_.push_back(row.popcount());
}

CoverageMatrix CoverageMatrix::from_lists(std::vector<std::string> test_names,
                                          std::size_t unit_count,
                                          const std::vector<std::vector<std::size_t>>& covers) {
    return CoverageMatrix(std::move(test_names), unit_count,
                          rows_from_lists(unit_count, covers, "unit"));
}

std::size_t CoverageMatrix::max_row_popcount() const {
    return *std::max_element(popcounts_.begin(), popcounts_.end());
}

KillMatrix::KillMatrix(std::vector<std::string> test_names, std::size_t fault_count,
                       std::vector<BitRow> rows)
    : test_names_(std::move(test_names)), fault_count_(fault_count), rows_(std::move(rows)) {
    check_names(test_names_);
    if (fault_count_ == 0) {
        throw InputError("kill matrix needs at least one fault");
    }
    if (rows_.size() != test_names_.size()) {
        throw InputError("row count does not match test name count");
    }
    BitRow killed(fault_count_);
    for (const auto& row : rows_) {
        if (row.width() != fault_count_) {
            throw InputError("row width does not match fault count");
        }
        killed.or_assign(row);
    }
    for (std::size_t f = 0; f < fault_count_; ++f) {
        if (!killed.test(f)) {
            throw InputError("fault f" + std::to_string(f) + " undetected");
        }
    }
}

KillMatrix KillMatrix::from_lists(std::vector<std::string> test_names, std::size_t fault_count,
                                  const std::vector<std::vector<std::size_t>>& kills) {
    return KillMatrix(std::move(test_names), fault_count,
                      rows_from_lists(fault_count, kills, "fault"));
}

GroupMap::GroupMap(std::vector<Group> groups, std::size_t test_count)
    : groups_(std::move(groups)) {
    std::sort(groups_.begin(), groups_.end(),
              [](const Group& a, const Group& b) { return a.first < b.first; });
    std::vector<char> seen(test_count, 0);
    for (const auto& [name, members] : groups_) {
        if (members.empty()) {
            throw InputError("group " + name + " is empty");
        }
        for (const std::size_t t : members) {
            if (t >= test_count) {
                throw InputError("group " + name + " references unknown test index " +
                                 std::to_string(t));
            }
            if (seen[t]) {
                throw InputError("test index " + std::to_string(t) +
                                 " appears in more than one group");
            }
            seen[t] = 1;
        }
    }
    for (std::size_t t = 0; t < test_count; ++t) {
        if (!seen[t]) {
            throw InputError("test index " + std::to_string(t) + " missing from every group");
        }
    }
}

CoverageMatrix aggregate_rows(const CoverageMatrix& matrix, const GroupMap& groups) {
    std::vector<std::string> names;
    std::vector<BitRow> rows;
    names.reserve(groups.group_count());
    rows.reserve(groups.group_count());
    for (const auto& [name, members] : groups.groups()) {
        BitRow row(matrix.unit_count());
        for (const std::size_t t : members) {
            if (t >= matrix.test_count()) {
                throw InputError("group " + name + " references unknown test index " +
                                 std::to_string(t));
            }
            row.or_assign(matrix.row(t));
        }
        names.push_back(name);
        rows.push_back(std::move(row));
    }
    return CoverageMatrix(std::move(names), matrix.unit_count(), std::move(rows));
}

std::string_view strategy_name(StrategyId id) {
    switch (id) {
        case StrategyId::Total: return "total";
        case StrategyId::Additional: return "additional";
        case StrategyId::Unified: return "unified";
        case StrategyId::Lexicographical: return "lexicographical";
        case StrategyId::Art: return "art";
        case StrategyId::Search: return "search";
        case StrategyId::Ocp: return "ocp";
    }
    throw InternalError("unknown strategy id");
}

std::optional<StrategyId> parse_strategy(std::string_view name) {
    for (const StrategyId id : kAllStrategies) {
        if (strategy_name(id) == name) return id;
    }
    return std::nullopt;
}

void validate_permutation(const Ordering& ordering, std::size_t test_count) {
    internal_check(ordering.permutation.size() == test_count,
                   "permutation length does not match test count");
    std::vector<char> seen(test_count, 0);
    for (const std::size_t t : ordering.permutation) {
        internal_check(t < test_count, "permutation entry out of range");
        internal_check(!seen[t], "permutation entry repeated");
        seen[t] = 1;
    }
}

}  // namespace tcprio
