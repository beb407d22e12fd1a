#include "coordlab/action_profile.hpp"

namespace coordlab {

namespace {

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string ActionProfile::to_hex() const {
    static const char* digits = "0123456789abcdef";
    const int nibbles = (size_ + 3) / 4;
    std::string out(nibbles, '0');
    for (int nib = 0; nib < nibbles; ++nib) {
        int value = 0;
        for (int b = 0; b < 4; ++b) {
            const int i = 4 * nib + b;
            if (i < size_ && get(i)) value |= 1 << b;
        }
        // Most significant nibble first.
        out[nibbles - 1 - nib] = digits[value];
    }
    return out;
}

ActionProfile ActionProfile::from_hex(std::string_view hex, int n) {
    const int nibbles = (n + 3) / 4;
    if (static_cast<int>(hex.size()) != nibbles)
        throw std::invalid_argument("hex profile must have ceil(n/4) digits");
    ActionProfile a(n);
    for (int pos = 0; pos < nibbles; ++pos) {
        const int value = hex_digit(hex[pos]);
        if (value < 0) throw std::invalid_argument("invalid hex digit in profile");
        const int nib = nibbles - 1 - pos;
        for (int b = 0; b < 4; ++b) {
            const int i = 4 * nib + b;
            if (value & (1 << b)) {
                if (i >= n)
                    throw std::invalid_argument("hex profile has bits beyond n");
                a.set(i, true);
            }
        }
    }
    return a;
}

}  // namespace coordlab
