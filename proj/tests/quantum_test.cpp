#include <cmath>
#include <vector>

#include <doctest.h>

#include "hdqss/quantum.hpp"

using namespace hdqss;

namespace {

// 3-sigma binomial band around expectation p over n trials.
bool within_band(double observed, double p, std::size_t n, double sigmas = 3.0) {
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return std::abs(observed - p) <= sigmas * sigma;
}

} // namespace

TEST_CASE("prepare builds the requested BB84 state") {
    CHECK(prepare(0, Basis::Z) == QubitSymbol{Basis::Z, 0});
    CHECK(prepare(1, Basis::X) == QubitSymbol{Basis::X, 1});
    CHECK(prepare(1, Basis::Z) == QubitSymbol{Basis::Z, 1});
}

TEST_CASE("matched-basis measurement is deterministic") {
    RandomSource rng(1);
    CHECK(measure(QubitSymbol{Basis::Z, 0}, Basis::Z, rng) == 0);
    CHECK(measure(QubitSymbol{Basis::Z, 1}, Basis::Z, rng) == 1);
    CHECK(measure(QubitSymbol{Basis::X, 0}, Basis::X, rng) == 0);
    CHECK(measure(QubitSymbol{Basis::X, 1}, Basis::X, rng) == 1);
}

TEST_CASE("conjugate-basis measurement is a fair coin") {
    RandomSource rng(7);
    const std::size_t trials = 100000;
    std::size_t ones = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        ones += static_cast<std::size_t>(measure(QubitSymbol{Basis::Z, 0}, Basis::X, rng));
    }
    const double mean = static_cast<double>(ones) / trials;
    CHECK(mean >= 0.49);
    CHECK(mean <= 0.51);
}

TEST_CASE("ideal channel is the identity") {
    RandomSource rng(3);
    const QubitSymbol q{Basis::Z, 1};
    CHECK(transmit(q, ChannelModel::ideal(), rng) == q);
}

TEST_CASE("flip probability one flips with certainty") {
    RandomSource rng(3);
    CHECK(transmit(QubitSymbol{Basis::X, 1}, ChannelModel::noisy(1.0), rng) ==
          QubitSymbol{Basis::X, 0});
}

TEST_CASE("lossless round trip for every state and basis") {
    RandomSource rng(11);
    for (const Basis basis : {Basis::Z, Basis::X}) {
        for (int bit = 0; bit <= 1; ++bit) {
            const QubitSymbol q = transmit(prepare(bit, basis), ChannelModel::ideal(), rng);
            CHECK(measure(q, basis, rng) == bit);
        }
    }
}

TEST_CASE("intercept-resend with random basis disturbs 1/4 of matched rounds") {
    RandomSource rng(17);
    const std::size_t trials = 100000;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const QubitSymbol sent = prepare(0, Basis::Z);
        const QubitSymbol got = transmit(sent, ChannelModel::intercept_resend(), rng);
        errors += static_cast<std::size_t>(measure(got, Basis::Z, rng) != 0);
    }
    const double rate = static_cast<double>(errors) / trials;
    CHECK(rate >= 0.24);
    CHECK(rate <= 0.26);
    CHECK(within_band(rate, 0.25, trials));
}

TEST_CASE("fixed-basis Eve: matched basis is invisible, conjugate randomizes") {
    RandomSource rng(23);
    // Eve measuring in the preparation basis never disturbs.
    for (std::size_t i = 0; i < 1000; ++i) {
        const QubitSymbol got =
            transmit(prepare(1, Basis::Z), ChannelModel::intercept_resend_fixed(Basis::Z), rng);
        CHECK(measure(got, Basis::Z, rng) == 1);
    }
    // Eve measuring in the conjugate basis randomizes the receiver outcome.
    const std::size_t trials = 20000;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const QubitSymbol got =
            transmit(prepare(1, Basis::Z), ChannelModel::intercept_resend_fixed(Basis::X), rng);
        errors += static_cast<std::size_t>(measure(got, Basis::Z, rng) != 1);
    }
    CHECK(within_band(static_cast<double>(errors) / trials, 0.5, trials));
}

TEST_CASE("noise-only channel flips at the configured rate") {
    RandomSource rng(29);
    const double p = 0.05;
    const std::size_t trials = 50000;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const QubitSymbol got = transmit(prepare(0, Basis::Z), ChannelModel::noisy(p), rng);
        errors += static_cast<std::size_t>(measure(got, Basis::Z, rng) != 0);
    }
    CHECK(within_band(static_cast<double>(errors) / trials, p, trials));
}

TEST_CASE("identical seeds reproduce the full outcome transcript") {
    const auto run = [](std::uint64_t seed) {
        RandomSource rng(seed);
        std::vector<int> outcomes;
        for (std::size_t i = 0; i < 500; ++i) {
            const QubitSymbol got =
                transmit(prepare(static_cast<int>(i & 1), Basis::Z),
                         ChannelModel{EveModel::InterceptResendRandomBasis, Basis::Z, 0.1}, rng);
            outcomes.push_back(measure(got, Basis::X, rng));
        }
        return outcomes;
    };
    CHECK(run(99) == run(99));
    CHECK(run(99) != run(100)); // different stream, sanity
}
