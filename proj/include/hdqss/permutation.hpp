#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdqss/key.hpp"
#include "hdqss/random.hpp"

namespace hdqss {

// Bijection on bit positions {0..n-1}. apply() reads from the mapped source
// position: out[i] = in[mapping[i]].
class Permutation {
public:
    Permutation() = default;

    static Permutation identity(std::size_t n);
    static Permutation reversal(std::size_t n);

    // Uniform draw via Fisher-Yates; the identity occurs with probability 1/n!
    // and is not resampled.
    static Permutation random(std::size_t n, RandomSource& rng);

    // Validates that `mapping` is a bijection.
    static Permutation from_mapping(std::vector<std::uint32_t> mapping);

    std::size_t size() const noexcept { return mapping_.size(); }
    std::uint32_t source_of(std::size_t i) const { return mapping_[i]; }

    bool is_identity() const;

    Key apply(const Key& key) const;
    Permutation inverse() const;

    // "[2 0 1]" rendering for transcripts.
    std::string to_string() const;

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint32_t> mapping_;
};

} // namespace hdqss
