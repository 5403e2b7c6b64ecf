#include "doctest.h"

#include <vector>

#include "tcprio/bitrow.hpp"
#include "tcprio/rng.hpp"

using tcprio::BitRow;
using tcprio::Rng;

namespace {

BitRow from_bools(const std::vector<bool>& bits) {
    BitRow row(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) row.set(i);
    }
    return row;
}

std::vector<bool> random_bools(Rng& rng, std::size_t width, double density) {
    std::vector<bool> bits(width);
    for (std::size_t i = 0; i < width; ++i) bits[i] = rng.next_double() < density;
    return bits;
}

}  // namespace

TEST_CASE("bitrow basics") {
    BitRow row(70);
    CHECK(row.width() == 70);
    CHECK_FALSE(row.any());
    CHECK(row.popcount() == 0);

    row.set(0);
    row.set(63);
    row.set(64);
    row.set(69);
    CHECK(row.any());
    CHECK(row.popcount() == 4);
    CHECK(row.test(63));
    CHECK(row.test(64));
    CHECK_FALSE(row.test(1));

    std::vector<std::size_t> seen;
    row.for_each_set_bit([&](std::size_t b) { seen.push_back(b); });
    CHECK(seen == std::vector<std::size_t>{0, 63, 64, 69});

    row.clear();
    CHECK(row.popcount() == 0);
}

TEST_CASE("bitrow bounds are checked") {
    BitRow row(10);
    CHECK_THROWS_AS(row.set(10), tcprio::InternalError);
    CHECK_THROWS_AS((void)row.test(10), tcprio::InternalError);
    BitRow other(11);
    CHECK_THROWS_AS((void)row.andnot_popcount(other), tcprio::InternalError);
}

TEST_CASE("bitrow word kernels match per-bit reference") {
    Rng rng(2024);
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t width = 1 + rng.index(200);
        const auto a_bits = random_bools(rng, width, 0.3);
        const auto b_bits = random_bools(rng, width, 0.3);
        const BitRow a = from_bools(a_bits);
        const BitRow b = from_bools(b_bits);

        std::size_t andnot = 0, both = 0, either = 0;
        for (std::size_t i = 0; i < width; ++i) {
            if (a_bits[i] && !b_bits[i]) ++andnot;
            if (a_bits[i] && b_bits[i]) ++both;
            if (a_bits[i] || b_bits[i]) ++either;
        }
        CHECK(a.andnot_popcount(b) == andnot);
        CHECK(a.and_popcount(b) == both);
        CHECK(a.or_popcount(b) == either);

        BitRow merged = a;
        merged.or_assign(b);
        CHECK(merged.popcount() == either);

        const BitRow diff = a.andnot(b);
        CHECK(diff.popcount() == andnot);
        for (std::size_t i = 0; i < width; ++i) {
            CHECK(diff.test(i) == (a_bits[i] && !b_bits[i]));
        }
    }
}
