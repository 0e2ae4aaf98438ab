#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hdqss {

// Seeded deterministic randomness source. All draws go through hand-rolled
// reductions over mt19937_64 output (std::uniform_int_distribution and friends
// are implementation-defined, which would break cross-platform transcript
// reproducibility). One RandomSource is owned by one session at a time.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // One fair bit (top engine bit).
    int bit() { return static_cast<int>(engine_() >> 63); }

    bool coin() { return bit() != 0; }

    // Uniform double in [0, 1) with 53-bit resolution.
    double real01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return real01() < p; }

    // Uniform integer in [0, n) via rejection sampling, n >= 1.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t max = ~std::uint64_t{0};
        const std::uint64_t rem = (max % n + 1) % n; // 2^64 mod n
        std::uint64_t r = engine_();
        while (rem != 0 && r > max - rem) {
            r = engine_();
        }
        return r % n;
    }

    // Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace hdqss
