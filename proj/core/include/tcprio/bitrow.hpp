#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "tcprio/errors.hpp"

namespace tcprio {

/// Fixed-width row of bits packed into 64-bit words.
///
/// Bits at positions >= width() are kept zero at all times, so whole-word
/// popcounts never need masking. All strategy kernels reduce to popcount,
/// AND-NOT popcount and OR-assign on these rows.
class BitRow {
public:
    BitRow() = default;

    explicit BitRow(std::size_t width)
        : width_(width), words_((width + 63) / 64, 0) {}

    std::size_t width() const { return width_; }

    void set(std::size_t bit) {
        internal_check(bit < width_, "BitRow::set: bit out of range");
        words_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
    }

    bool test(std::size_t bit) const {
        internal_check(bit < width_, "BitRow::test: bit out of range");
        return (words_[bit >> 6] >> (bit & 63)) & 1;
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    bool any() const {
        for (auto w : words_)
            if (w != 0) return true;
        return false;
    }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    /// |this AND NOT mask| — the core "additionally covered" kernel.
    std::size_t andnot_popcount(const BitRow& mask) const {
        internal_check(mask.width_ == width_, "BitRow width mismatch");
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(words_[i] & ~mask.words_[i]));
        return n;
    }

    std::size_t and_popcount(const BitRow& other) const {
        internal_check(other.width_ == width_, "BitRow width mismatch");
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return n;
    }

    std::size_t or_popcount(const BitRow& other) const {
        internal_check(other.width_ == width_, "BitRow width mismatch");
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(words_[i] | other.words_[i]));
        return n;
    }

    void or_assign(const BitRow& other) {
        internal_check(other.width_ == width_, "BitRow width mismatch");
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    }

    BitRow andnot(const BitRow& mask) const {
        internal_check(mask.width_ == width_, "BitRow width mismatch");
        BitRow out(width_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            out.words_[i] = words_[i] & ~mask.words_[i];
        return out;
    }

    /// Calls f(bit_index) for every set bit, ascending.
    template <typename F>
    void for_each_set_bit(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                const int b = std::countr_zero(w);
                f(i * 64 + static_cast<std::size_t>(b));
                w &= w - 1;
            }
        }
    }

    bool operator==(const BitRow&) const = default;

private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace tcprio
