#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hdqss/subprotocol.hpp"

namespace hdqss::analysis {

// Exact rational, normalized (gcd reduced, positive denominator). Efficiency
// values are tiny fractions; long long is ample.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const; // "1/98", "3"

    bool operator==(const Rational&) const = default;
    bool operator<(const Rational& other) const { return num * other.den < other.num * den; }
};

// Percentage rounded to two decimals with trailing zeros stripped: "16.67%",
// "10%", "0.51%".
std::string render_percentage(const Rational& value);

enum class Protocol : std::uint8_t { Hsu, Jia, Liao, Proposed };

const char* name(Protocol protocol);

inline constexpr Protocol kAllProtocols[] = {Protocol::Hsu, Protocol::Jia, Protocol::Liao,
                                             Protocol::Proposed};

// Qubit efficiency c/q for an m-party scheme (boss + m-1 agents), m >= 2.
Rational eta1(Protocol protocol, long long m);

// c/(q+b) for the proposed scheme: q = 2(m-1) travel qubits and b = m-2
// decoding bits, so 1/(3m-4). Competitor values are intentionally not derived.
Rational eta2_proposed(long long m);

struct EfficiencyReport {
    Protocol protocol = Protocol::Proposed;
    long long m = 0;
    Rational eta1;
    std::optional<Rational> eta2; // Proposed only
    long long c = 0;              // classical bits shared
    long long q = 0;              // qubits used
    long long b = 0;              // decoding bits
};

// One row per protocol per party count, exact rationals.
std::vector<EfficiencyReport> comparison_table(const std::vector<long long>& m_values);

std::string render_table_text(const std::vector<EfficiencyReport>& rows);
std::string render_table_csv(const std::vector<EfficiencyReport>& rows);

// Realized efficiency of simulated runs: secret_bits over the total qubits the
// sessions transmitted. Expected below the idealized table values whenever the
// sub-protocol loses transmissions to sifting.
Rational measured_eta1(const std::vector<SessionResult>& sessions, std::size_t secret_bits);

struct SubsetStat {
    std::vector<std::size_t> members; // primary indices
    std::uint64_t matches = 0;
    std::uint64_t total = 0;
};

struct CollusionAuditReport {
    std::size_t n_bits = 0;
    std::size_t num_primaries = 0;
    std::uint64_t assignments = 0;
    std::vector<SubsetStat> subsets; // nonempty proper subsets, mask order
    bool pass = false;               // every fraction exactly 2^-n_bits
};

// Exhaustive enumeration of all key assignments: for every nonempty proper
// subset of the primaries, the fraction of assignments where the subset's XOR
// hits the master key. Uniformity (== 2^-n_bits everywhere) is exactly the
// zero-information property.
CollusionAuditReport audit_collusion(std::size_t n_bits, std::size_t num_primaries);

std::string render_audit(const CollusionAuditReport& report);

struct LockAuditReport {
    std::size_t n_bits = 0;
    std::uint64_t cases = 0;             // keys x permutations
    std::uint64_t fixed_point_cases = 0; // permutation fixes the key (direct enumeration)
    std::uint64_t pre_disclosure_matches = 0;
    std::uint64_t post_disclosure_matches = 0;
    bool pass = false;
};

// Exhaustive lock gating audit over all n-bit keys and all n! permutations,
// driven through real tree operations: pre-disclosure recovery must hit the
// master key exactly on permutation-fixed keys, post-disclosure always.
LockAuditReport audit_permutation_lock(std::size_t n_bits);

} // namespace hdqss::analysis
