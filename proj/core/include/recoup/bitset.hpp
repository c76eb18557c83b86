#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace recoup {

/// Fixed-width dynamic bitset used for edge presence maps and reachability
/// relations. Word-parallel count/scan; equality and hashing over the words.
class BitSet {
public:
    BitSet() = default;
    explicit BitSet(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// First set bit at position >= from, or npos.
    std::size_t find_next(std::size_t from = 0) const {
        if (from >= bits_) return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (w != 0) {
                std::size_t i = (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
                return i < bits_ ? i : npos;
            }
            if (++wi == words_.size()) return npos;
            w = words_[wi];
        }
    }

    /// a & ~b must have matching widths.
    static std::size_t count_and_not(const BitSet& a, const BitSet& b) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(a.words_[i] & ~b.words_[i]));
        return c;
    }

    void or_with(const BitSet& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    }

    friend bool operator==(const BitSet&, const BitSet&) = default;

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ bits_);
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitSetHash {
    std::size_t operator()(const BitSet& b) const { return b.hash(); }
};

}  // namespace recoup
