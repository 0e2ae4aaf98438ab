#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hdqss/random.hpp"

namespace hdqss {

// Fixed-length bit string: the unit of all secrets and of the XOR algebra.
// XOR requires equal lengths; k ^ k is the zero key, k ^ zero is k.
class Key {
public:
    Key() = default;

    // Zero key of n bits.
    explicit Key(std::size_t n) : bits_(n, 0) {}

    static Key random(std::size_t n, RandomSource& rng);

    // Parses "1010"-style bit strings.
    static Key from_string(std::string_view text);

    // Parses hex, MSB-first nibbles; the rendered width must match n_bits exactly.
    static Key from_hex(std::string_view hex, std::size_t n_bits);

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    int bit(std::size_t i) const { return bits_[i]; }
    void set_bit(std::size_t i, int value) { bits_[i] = static_cast<std::uint8_t>(value & 1); }
    void flip_bit(std::size_t i) { bits_[i] ^= 1; }

    bool is_zero() const;

    Key& operator^=(const Key& other);
    friend Key operator^(Key lhs, const Key& rhs) {
        lhs ^= rhs;
        return lhs;
    }

    bool operator==(const Key&) const = default;
    auto operator<=>(const Key&) const = default;

    std::string to_string() const;

    // Requires size() % 4 == 0.
    std::string to_hex() const;

private:
    std::vector<std::uint8_t> bits_;
};

// 16 lowercase hex digits of a 64-bit FNV-1a over the key's bit rendering.
// Non-cryptographic, test/transcript use only; never a commitment scheme.
std::string fingerprint(const Key& key);

std::uint64_t fnv1a64(std::string_view bytes);

} // namespace hdqss
