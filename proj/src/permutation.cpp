#include "hdqss/permutation.hpp"

#include <numeric>

#include "hdqss/error.hpp"

namespace hdqss {

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.mapping_.resize(n);
    std::iota(p.mapping_.begin(), p.mapping_.end(), 0u);
    return p;
}

Permutation Permutation::reversal(std::size_t n) {
    Permutation p;
    p.mapping_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.mapping_[i] = static_cast<std::uint32_t>(n - 1 - i);
    }
    return p;
}

Permutation Permutation::random(std::size_t n, RandomSource& rng) {
    Permutation p = identity(n);
    rng.shuffle(p.mapping_);
    return p;
}

Permutation Permutation::from_mapping(std::vector<std::uint32_t> mapping) {
    std::vector<std::uint8_t> seen(mapping.size(), 0);
    for (const auto m : mapping) {
        if (m >= mapping.size() || seen[m]) {
            throw Error(ErrorCode::InvalidPermutation,
                        "mapping is not a bijection on {0.." +
                            std::to_string(mapping.size() ? mapping.size() - 1 : 0) + "}");
        }
        seen[m] = 1;
    }
    Permutation p;
    p.mapping_ = std::move(mapping);
    return p;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < mapping_.size(); ++i) {
        if (mapping_[i] != i) return false;
    }
    return true;
}

Key Permutation::apply(const Key& key) const {
    if (key.size() != mapping_.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "permutation on " + std::to_string(mapping_.size()) +
                        " positions applied to " + std::to_string(key.size()) + "-bit key");
    }
    Key out(key.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) {
        out.set_bit(i, key.bit(mapping_[i]));
    }
    return out;
}

Permutation Permutation::inverse() const {
    Permutation p;
    p.mapping_.resize(mapping_.size());
    for (std::size_t i = 0; i < mapping_.size(); ++i) {
        p.mapping_[mapping_[i]] = static_cast<std::uint32_t>(i);
    }
    return p;
}

std::string Permutation::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < mapping_.size(); ++i) {
        if (i != 0) out += ' ';
        out += std::to_string(mapping_[i]);
    }
    out += ']';
    return out;
}

} // namespace hdqss
