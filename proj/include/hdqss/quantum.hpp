#pragma once

#include <cstdint>

#include "hdqss/random.hpp"

namespace hdqss {

// Preparation/measurement basis. Measuring in the preparation basis is
// deterministic; measuring in the conjugate basis yields a fair coin.
enum class Basis : std::uint8_t {
    Z, // computational
    X, // diagonal
};

const char* name(Basis basis);

// One of the four BB84 states. (basis, bit) is a complete description here:
// only pure BB84 states ever travel, so no amplitude bookkeeping is needed.
struct QubitSymbol {
    Basis basis = Basis::Z;
    std::uint8_t bit = 0;

    bool operator==(const QubitSymbol&) const = default;
};

enum class EveModel : std::uint8_t {
    None,
    InterceptResendRandomBasis,
    InterceptResendFixedBasis,
};

// Channel adversary/noise description. Eve acts first, then an independent
// bit-flip with flip_probability is applied to the encoded value.
struct ChannelModel {
    EveModel eve = EveModel::None;
    Basis eve_basis = Basis::Z; // only read for InterceptResendFixedBasis
    double flip_probability = 0.0;

    static ChannelModel ideal() { return {}; }
    static ChannelModel intercept_resend() {
        return {EveModel::InterceptResendRandomBasis, Basis::Z, 0.0};
    }
    static ChannelModel intercept_resend_fixed(Basis basis) {
        return {EveModel::InterceptResendFixedBasis, basis, 0.0};
    }
    static ChannelModel noisy(double flip_probability) {
        return {EveModel::None, Basis::Z, flip_probability};
    }
};

QubitSymbol prepare(int bit, Basis basis);

// Matched basis returns the encoded bit; conjugate basis draws a fair coin.
// A symbol is measured at most once per transmission (value semantics; callers
// must not reuse a measured symbol).
int measure(const QubitSymbol& q, Basis basis, RandomSource& rng);

// Draw order per call, for transcript reproducibility: Eve's basis (random-basis
// model only), Eve's measurement coin (conjugate case only), then one noise draw
// if flip_probability > 0.
QubitSymbol transmit(const QubitSymbol& q, const ChannelModel& model, RandomSource& rng);

} // namespace hdqss
