#include <doctest.h>

#include "hdqss/error.hpp"
#include "hdqss/key.hpp"

using namespace hdqss;

TEST_CASE("xor algebra: commutative, associative, self-inverse, zero identity") {
    RandomSource rng(55);
    for (int i = 0; i < 100; ++i) {
        const Key a = Key::random(24, rng);
        const Key b = Key::random(24, rng);
        const Key c = Key::random(24, rng);
        const Key zero(24);
        CHECK((a ^ b) == (b ^ a));
        CHECK(((a ^ b) ^ c) == (a ^ (b ^ c)));
        CHECK((a ^ a) == zero);
        CHECK((a ^ zero) == a);
    }
}

TEST_CASE("string and hex round trips") {
    CHECK(Key::from_string("1010").to_string() == "1010");
    CHECK(Key::from_string("1010") == Key::from_hex("a", 4));
    CHECK(Key::from_hex("c0de", 16).to_string() == "1100000011011110");
    CHECK(Key::from_hex("c0de", 16).to_hex() == "c0de");
    CHECK(Key(4).is_zero());
    CHECK_FALSE(Key::from_string("0100").is_zero());

    CHECK_THROWS_AS(Key::from_string("10x0"), Error);
    CHECK_THROWS_AS(Key::from_hex("zz", 8), Error);
    CHECK_THROWS_AS(Key::from_hex("ab", 4), Error);   // width mismatch
    CHECK_THROWS_AS(Key::from_string("101").to_hex(), Error);
    CHECK_THROWS_AS(Key::from_string("10") ^ Key::from_string("101"), Error);

    RandomSource rng(66);
    for (int i = 0; i < 50; ++i) {
        const Key k = Key::random(32, rng);
        CHECK(Key::from_string(k.to_string()) == k);
        CHECK(Key::from_hex(k.to_hex(), 32) == k);
    }
}

TEST_CASE("fingerprints are stable, 16 hex digits, and value-sensitive") {
    const Key a = Key::from_string("1010");
    CHECK(fingerprint(a).size() == 16);
    CHECK(fingerprint(a) == fingerprint(Key::from_string("1010")));
    CHECK(fingerprint(a) != fingerprint(Key::from_string("1011")));
    // Pinned: FNV-1a over the bit rendering, platform independent.
    CHECK(fnv1a64("1010") == 0x0d85eff0f89163adull);
}
