#pragma once

#include <cstddef>
#include <cstdint>

#include "hdqss/key.hpp"
#include "hdqss/quantum.hpp"
#include "hdqss/random.hpp"

namespace hdqss {

inline constexpr double kDefaultQberThreshold = 0.11;

enum class AbortReason : std::uint8_t {
    None,
    QberExceeded,
    InsufficientRounds,
};

const char* name(AbortReason reason);

// Outcome of one two-party key-establishment session. On a non-aborted run both
// keys have the requested length; they are bit-identical except on accepted
// noisy BB84 runs, where the residual mismatch is reported rather than
// reconciled (no error correction layer).
struct SessionResult {
    Key key_initiator;
    Key key_responder;
    double qber = 0.0;
    std::size_t qubits_sent = 0;
    std::size_t sifted_bits = 0;
    std::size_t check_bits_used = 0;
    bool aborted = false;
    AbortReason abort_reason = AbortReason::None;

    bool ok() const noexcept { return !aborted; }
};

struct Bb84Config {
    ChannelModel channel;
    double qber_threshold = kDefaultQberThreshold;
    std::size_t max_rounds = 0; // 0 = derived from n
};

// Which sub-protocol backs a key establishment: a faithful BB84 simulation, or
// a trusted oracle that hands both parties the same fresh key (fast path for
// the higher layers). The interface admits further QKD-style protocols later.
struct SubprotocolKind {
    enum class Kind : std::uint8_t { IdealOracle, Bb84 };

    Kind kind = Kind::IdealOracle;
    Bb84Config bb84;

    static SubprotocolKind oracle() { return {}; }
    static SubprotocolKind bb84_with(ChannelModel channel,
                                     double qber_threshold = kDefaultQberThreshold) {
        return {Kind::Bb84, Bb84Config{channel, qber_threshold, 0}};
    }
};

// Prepare-and-measure BB84 between initiator and responder over the given
// channel. Rounds are run one at a time until exactly 2n sifted bits exist
// (mismatched-basis rounds discarded; expected sift rate 1/2). A uniformly
// random half of the sifted bits is publicly compared; qber above the threshold
// aborts, otherwise the first n unchecked sifted bits become the key on both
// sides. qubits_sent counts every transmitted symbol. The classical discussion
// channel is assumed authenticated and is not simulated.
SessionResult run_bb84(std::size_t n, const Bb84Config& config, RandomSource& rng);

SessionResult run_bb84(std::size_t n, const ChannelModel& channel, double qber_threshold,
                       RandomSource& rng);

// Uniform entry point used by the key tree. Aborts are returned in-band,
// unchanged from the backing protocol.
SessionResult establish_key(const SubprotocolKind& kind, std::size_t n, RandomSource& rng);

} // namespace hdqss
