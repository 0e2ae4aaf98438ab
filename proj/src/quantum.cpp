#include "hdqss/quantum.hpp"

namespace hdqss {

const char* name(Basis basis) {
    return basis == Basis::Z ? "Z" : "X";
}

QubitSymbol prepare(int bit, Basis basis) {
    return QubitSymbol{basis, static_cast<std::uint8_t>(bit & 1)};
}

int measure(const QubitSymbol& q, Basis basis, RandomSource& rng) {
    if (basis == q.basis) {
        return q.bit;
    }
    return rng.bit();
}

QubitSymbol transmit(const QubitSymbol& q, const ChannelModel& model, RandomSource& rng) {
    QubitSymbol out = q;
    switch (model.eve) {
    case EveModel::None:
        break;
    case EveModel::InterceptResendRandomBasis: {
        const Basis eve_basis = rng.coin() ? Basis::X : Basis::Z;
        const int outcome = measure(out, eve_basis, rng);
        out = prepare(outcome, eve_basis);
        break;
    }
    case EveModel::InterceptResendFixedBasis: {
        const int outcome = measure(out, model.eve_basis, rng);
        out = prepare(outcome, model.eve_basis);
        break;
    }
    }
    if (model.flip_probability > 0.0 && rng.bernoulli(model.flip_probability)) {
        out.bit ^= 1;
    }
    return out;
}

} // namespace hdqss
