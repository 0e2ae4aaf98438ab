#include "hdqss/subprotocol.hpp"

#include <numeric>
#include <stdexcept>
#include <vector>

#include "hdqss/error.hpp"

namespace hdqss {

const char* name(AbortReason reason) {
    switch (reason) {
    case AbortReason::None: return "None";
    case AbortReason::QberExceeded: return "QberExceeded";
    case AbortReason::InsufficientRounds: return "InsufficientRounds";
    }
    return "None";
}

SessionResult run_bb84(std::size_t n, const Bb84Config& config, RandomSource& rng) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidLength, "key length must be >= 1");
    }
    if (config.qber_threshold < 0.0 || config.qber_threshold > 1.0) {
        throw std::invalid_argument("qber_threshold must lie in [0, 1]");
    }
    if (config.channel.flip_probability < 0.0 || config.channel.flip_probability > 1.0) {
        throw std::invalid_argument("flip_probability must lie in [0, 1]");
    }

    const std::size_t target_sifted = 2 * n;
    const std::size_t max_rounds =
        config.max_rounds != 0 ? config.max_rounds : 64 * target_sifted + 1024;

    std::vector<std::uint8_t> sender_bits;
    std::vector<std::uint8_t> receiver_bits;
    sender_bits.reserve(target_sifted);
    receiver_bits.reserve(target_sifted);

    std::size_t sent = 0;
    std::size_t rounds = 0;
    while (sender_bits.size() < target_sifted) {
        if (rounds == max_rounds) {
            SessionResult r;
            r.qubits_sent = sent;
            r.sifted_bits = sender_bits.size();
            r.aborted = true;
            r.abort_reason = AbortReason::InsufficientRounds;
            return r;
        }
        ++rounds;
        const int bit = rng.bit();
        const Basis basis = rng.coin() ? Basis::X : Basis::Z;
        const QubitSymbol received = transmit(prepare(bit, basis), config.channel, rng);
        ++sent;
        const Basis receiver_basis = rng.coin() ? Basis::X : Basis::Z;
        const int outcome = measure(received, receiver_basis, rng);
        // Bases compared over the authenticated classical channel; mismatches discarded.
        if (receiver_basis == basis) {
            sender_bits.push_back(static_cast<std::uint8_t>(bit));
            receiver_bits.push_back(static_cast<std::uint8_t>(outcome));
        }
    }

    // Publicly compare a uniformly random half of the sifted bits.
    std::vector<std::uint32_t> order(target_sifted);
    std::iota(order.begin(), order.end(), 0u);
    rng.shuffle(order);
    const std::size_t check_count = target_sifted / 2;

    std::vector<std::uint8_t> is_check(target_sifted, 0);
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < check_count; ++i) {
        const std::uint32_t pos = order[i];
        is_check[pos] = 1;
        if (sender_bits[pos] != receiver_bits[pos]) {
            ++disagreements;
        }
    }
    const double qber = static_cast<double>(disagreements) / static_cast<double>(check_count);

    SessionResult r;
    r.qber = qber;
    r.qubits_sent = sent;
    r.sifted_bits = target_sifted;
    r.check_bits_used = check_count;
    if (qber > config.qber_threshold) {
        r.aborted = true;
        r.abort_reason = AbortReason::QberExceeded;
        return r;
    }

    // First n unchecked sifted bits, in transmission order, on both sides.
    Key initiator(n);
    Key responder(n);
    std::size_t k = 0;
    for (std::size_t pos = 0; pos < target_sifted && k < n; ++pos) {
        if (is_check[pos]) continue;
        initiator.set_bit(k, sender_bits[pos]);
        responder.set_bit(k, receiver_bits[pos]);
        ++k;
    }
    r.key_initiator = std::move(initiator);
    r.key_responder = std::move(responder);
    return r;
}

SessionResult run_bb84(std::size_t n, const ChannelModel& channel, double qber_threshold,
                       RandomSource& rng) {
    return run_bb84(n, Bb84Config{channel, qber_threshold, 0}, rng);
}

SessionResult establish_key(const SubprotocolKind& kind, std::size_t n, RandomSource& rng) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidLength, "key length must be >= 1");
    }
    switch (kind.kind) {
    case SubprotocolKind::Kind::Bb84:
        return run_bb84(n, kind.bb84, rng);
    case SubprotocolKind::Kind::IdealOracle: {
        SessionResult r;
        r.key_initiator = Key::random(n, rng);
        r.key_responder = r.key_initiator;
        r.qubits_sent = 2 * n; // accounting convention for the ideal exchange
        r.sifted_bits = 2 * n;
        r.check_bits_used = 0;
        return r;
    }
    }
    throw std::logic_error("unreachable subprotocol kind");
}

} // namespace hdqss
