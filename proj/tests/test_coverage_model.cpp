#include "doctest.h"

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "tcprio/coverage_model.hpp"

using namespace tcprio;
using tcprio::testing::make_matrix;
using tcprio::testing::random_matrix;

TEST_CASE("coverage matrix validates its invariants") {
    CHECK_THROWS_AS(CoverageMatrix::from_lists({}, 3, {}), InputError);
    CHECK_THROWS_AS(CoverageMatrix::from_lists({"a"}, 0, {{}}), InputError);
    CHECK_THROWS_AS(CoverageMatrix::from_lists({"a", "a"}, 2, {{0}, {1}}), InputError);
    CHECK_THROWS_AS(CoverageMatrix::from_lists({"a"}, 2, {{2}}), InputError);

    // zero-coverage rows are legal
    const auto m = CoverageMatrix::from_lists({"a", "b"}, 3, {{}, {0, 2}});
    CHECK(m.row_popcount(0) == 0);
    CHECK(m.row_popcount(1) == 2);
    CHECK(m.max_row_popcount() == 2);
    CHECK(m.covers(1, 2));
    CHECK_FALSE(m.covers(0, 0));
}

TEST_CASE("kill matrix rejects undetected faults") {
    CHECK_THROWS_WITH_AS(KillMatrix::from_lists({"a", "b"}, 2, {{0}, {0}}),
                         doctest::Contains("fault f1 undetected"), InputError);
    const auto k = KillMatrix::from_lists({"a", "b"}, 2, {{0, 1}, {0, 1}});
    CHECK(k.fault_count() == 2);
    CHECK(k.kills(1, 0));
}

TEST_CASE("group map must partition the tests") {
    CHECK_THROWS_AS(GroupMap({{"g", {0, 1}}}, 3), InputError);          // 2 missing
    CHECK_THROWS_AS(GroupMap({{"g", {0, 1}}, {"h", {1, 2}}}, 3), InputError);  // 1 twice
    CHECK_THROWS_AS(GroupMap({{"g", {0, 3}}, {"h", {1, 2}}}, 3), InputError);  // 3 unknown
    CHECK_THROWS_AS(GroupMap({{"g", {}}, {"h", {0}}}, 1), InputError);  // empty group

    const GroupMap groups({{"zz", {2}}, {"aa", {0, 1}}}, 3);
    CHECK(groups.group_count() == 2);
    CHECK(groups.group(0).first == "aa");  // sorted by identifier
    CHECK(groups.group(1).first == "zz");
}

TEST_CASE("aggregate_rows ors disjoint member rows") {
    const auto m = make_matrix(2, {{"x", {0}}, {"y", {1}}});
    const GroupMap groups({{"A", {0, 1}}}, 2);
    const auto agg = aggregate_rows(m, groups);
    CHECK(agg.test_count() == 1);
    CHECK(agg.test_name(0) == "A");
    CHECK(agg.covers(0, 0));
    CHECK(agg.covers(0, 1));
}

TEST_CASE("aggregate_rows with singleton groups reproduces the rows") {
    const auto m = make_matrix(4, {{"x", {0, 3}}, {"y", {1}}, {"z", {}}});
    const GroupMap groups({{"x", {0}}, {"y", {1}}, {"z", {2}}}, 3);
    const auto agg = aggregate_rows(m, groups);
    REQUIRE(agg.test_count() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(agg.row(i) == m.row(i));  // identical identifiers keep the order
    }
}

TEST_CASE("aggregate_rows matches a per-bit or oracle on random input") {
    Rng rng(31);
    for (int iter = 0; iter < 20; ++iter) {
        const auto m = random_matrix(rng, 9, 17, 0.3);
        const GroupMap groups({{"a", {0, 1, 2}}, {"b", {3}}, {"c", {4, 5, 6, 7, 8}}}, 9);
        const auto agg = aggregate_rows(m, groups);
        REQUIRE(agg.test_count() == 3);
        for (std::size_t g = 0; g < 3; ++g) {
            const auto& members = groups.group(g).second;
            std::size_t max_member = 0, sum_members = 0;
            for (std::size_t j = 0; j < m.unit_count(); ++j) {
                bool any = false;
                for (const std::size_t t : members) any |= m.covers(t, j);
                CHECK(agg.covers(g, j) == any);
            }
            for (const std::size_t t : members) {
                max_member = std::max(max_member, m.row_popcount(t));
                sum_members += m.row_popcount(t);
            }
            CHECK(agg.row_popcount(g) >= max_member);
            CHECK(agg.row_popcount(g) <= sum_members);
        }
    }
}

TEST_CASE("strategy names round-trip") {
    for (const StrategyId id : kAllStrategies) {
        const auto parsed = parse_strategy(strategy_name(id));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == id);
    }
    CHECK_FALSE(parse_strategy("bogus").has_value());
}

TEST_CASE("permutation validation") {
    Ordering ok{StrategyId::Total, 0, {2, 0, 1}, {}};
    CHECK_NOTHROW(validate_permutation(ok, 3));
    Ordering wrong_len{StrategyId::Total, 0, {0, 1}, {}};
    CHECK_THROWS_AS(validate_permutation(wrong_len, 3), InternalError);
    Ordering repeated{StrategyId::Total, 0, {0, 0, 1}, {}};
    CHECK_THROWS_AS(validate_permutation(repeated, 3), InternalError);
    Ordering out_of_range{StrategyId::Total, 0, {0, 1, 3}, {}};
    CHECK_THROWS_AS(validate_permutation(out_of_range, 3), InternalError);
}
