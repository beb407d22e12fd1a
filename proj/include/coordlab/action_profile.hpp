#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coordlab/errors.hpp"

namespace coordlab {

// Binary action profile a in {0,1}^n, bit-packed into 64-bit words with a
// cached population count. Vertex i maps to bit i of word i/64.
class ActionProfile {
public:
    ActionProfile() = default;

    explicit ActionProfile(int n) : size_(n), words_((n + 63) / 64, 0) {}

    static ActionProfile zeros(int n) { return ActionProfile(n); }

    static ActionProfile ones(int n) {
        ActionProfile a(n);
        for (int i = 0; i < n; ++i) a.set(i, true);
        return a;
    }

    // Parses "1100" as a_0=1, a_1=1, a_2=0, a_3=0.
    static ActionProfile from_bits(std::string_view bits) {
        ActionProfile a(static_cast<int>(bits.size()));
        for (int i = 0; i < static_cast<int>(bits.size()); ++i) {
            if (bits[i] != '0' && bits[i] != '1')
                throw std::invalid_argument("profile bits must be 0 or 1");
            a.set(i, bits[i] == '1');
        }
        return a;
    }

    // Low n bits of `word` taken as the profile, bit i = a_i.
    static ActionProfile from_word(std::uint64_t word, int n) {
        if (n < 0 || n > 64) throw std::invalid_argument("from_word needs 0 <= n <= 64");
        if (n < 64 && (word >> n) != 0)
            throw std::invalid_argument("profile word has bits beyond n");
        ActionProfile a(n);
        if (n > 0) {
            a.words_[0] = word;
            a.ones_count_ = std::popcount(word);
        }
        return a;
    }

    // Hex string, most significant nibble first, of the integer sum a_i * 2^i,
    // zero-padded to ceil(n/4) digits.
    static ActionProfile from_hex(std::string_view hex, int n);
    std::string to_hex() const;

    int size() const { return size_; }
    int ones_count() const { return ones_count_; }

    bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(int i, bool v) {
        std::uint64_t& w = words_[i >> 6];
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v && !(w & m)) {
            w |= m;
            ++ones_count_;
        } else if (!v && (w & m)) {
            w &= ~m;
            --ones_count_;
        }
    }

    void flip(int i) {
        std::uint64_t& w = words_[i >> 6];
        const std::uint64_t m = std::uint64_t{1} << (i & 63);
        ones_count_ += (w & m) ? -1 : 1;
        w ^= m;
    }

    // The whole profile as one word; valid for n <= 64.
    std::uint64_t to_word() const {
        if (size_ > 64) throw std::invalid_argument("profile wider than 64 bits");
        return words_.empty() ? 0 : words_[0];
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    friend bool operator==(const ActionProfile&, const ActionProfile&) = default;

private:
    int size_ = 0;
    int ones_count_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace coordlab
