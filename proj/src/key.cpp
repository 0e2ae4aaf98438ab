#include "hdqss/key.hpp"

#include <cstdio>

#include "hdqss/error.hpp"

namespace hdqss {

Key Key::random(std::size_t n, RandomSource& rng) {
    Key k(n);
    for (std::size_t i = 0; i < n; ++i) {
        k.bits_[i] = static_cast<std::uint8_t>(rng.bit());
    }
    return k;
}

Key Key::from_string(std::string_view text) {
    Key k(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw Error(ErrorCode::ParseError,
                        std::string("invalid bit character '") + text[i] + "' in key literal");
        }
        k.bits_[i] = static_cast<std::uint8_t>(text[i] - '0');
    }
    return k;
}

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

Key Key::from_hex(std::string_view hex, std::size_t n_bits) {
    if (hex.size() * 4 != n_bits) {
        throw Error(ErrorCode::LengthMismatch,
                    "hex literal encodes " + std::to_string(hex.size() * 4) + " bits, expected " +
                        std::to_string(n_bits));
    }
    Key k(n_bits);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        const int v = hex_value(hex[i]);
        if (v < 0) {
            throw Error(ErrorCode::ParseError,
                        std::string("invalid hex digit '") + hex[i] + "'");
        }
        for (std::size_t b = 0; b < 4; ++b) {
            k.bits_[i * 4 + b] = static_cast<std::uint8_t>((v >> (3 - b)) & 1);
        }
    }
    return k;
}

bool Key::is_zero() const {
    for (const auto b : bits_) {
        if (b != 0) return false;
    }
    return true;
}

Key& Key::operator^=(const Key& other) {
    if (bits_.size() != other.bits_.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "xor of " + std::to_string(bits_.size()) + "-bit and " +
                        std::to_string(other.bits_.size()) + "-bit keys");
    }
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        bits_[i] ^= other.bits_[i];
    }
    return *this;
}

std::string Key::to_string() const {
    std::string out(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        out[i] = static_cast<char>('0' + bits_[i]);
    }
    return out;
}

std::string Key::to_hex() const {
    if (bits_.size() % 4 != 0) {
        throw Error(ErrorCode::LengthMismatch,
                    "key length " + std::to_string(bits_.size()) + " is not a multiple of 4");
    }
    static const char digits[] = "0123456789abcdef";
    std::string out(bits_.size() / 4, '0');
    for (std::size_t i = 0; i < out.size(); ++i) {
        int v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            v = (v << 1) | bits_[i * 4 + b];
        }
        out[i] = digits[v];
    }
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const char c : bytes) {
        hash ^= static_cast<std::uint8_t>(c);
        hash *= 0x00000100000001b3ull;
    }
    return hash;
}

std::string fingerprint(const Key& key) {
    const std::uint64_t h = fnv1a64(key.to_string());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf, 16);
}

} // namespace hdqss
