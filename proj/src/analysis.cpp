#include "hdqss/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "hdqss/error.hpp"
#include "hdqss/sharing.hpp"

namespace hdqss::analysis {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) {
        throw std::invalid_argument("zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const {
    if (den == 1) {
        return std::to_string(num);
    }
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string render_percentage(const Rational& value) {
    // Hundredths of a percent, rounded half up; exact integer arithmetic.
    const long long hundredths = (value.num * 10000 + value.den / 2) / value.den;
    const long long whole = hundredths / 100;
    const long long frac = hundredths % 100;
    char buf[32];
    if (frac == 0) {
        std::snprintf(buf, sizeof(buf), "%lld%%", whole);
    } else if (frac % 10 == 0) {
        std::snprintf(buf, sizeof(buf), "%lld.%lld%%", whole, frac / 10);
    } else {
        std::snprintf(buf, sizeof(buf), "%lld.%02lld%%", whole, frac);
    }
    return buf;
}

const char* name(Protocol protocol) {
    switch (protocol) {
    case Protocol::Hsu: return "Hsu";
    case Protocol::Jia: return "Jia";
    case Protocol::Liao: return "Liao";
    case Protocol::Proposed: return "Proposed";
    }
    return "Proposed";
}

namespace {

void check_party_count(long long m) {
    if (m < 2) {
        throw Error(ErrorCode::InvalidPartyCount,
                    "need m >= 2 parties (boss plus at least one agent), got " +
                        std::to_string(m));
    }
}

} // namespace

Rational eta1(Protocol protocol, long long m) {
    check_party_count(m);
    switch (protocol) {
    case Protocol::Hsu: return Rational(1, 2 * m);
    case Protocol::Jia: return Rational(1, 4 * m - 2);
    case Protocol::Liao: return Rational(1, 2 * m - 1);
    case Protocol::Proposed: return Rational(1, 2 * m - 2);
    }
    throw std::logic_error("unreachable protocol");
}

Rational eta2_proposed(long long m) {
    check_party_count(m);
    return Rational(1, 3 * m - 4);
}

std::vector<EfficiencyReport> comparison_table(const std::vector<long long>& m_values) {
    std::vector<EfficiencyReport> rows;
    rows.reserve(m_values.size() * 4);
    for (const long long m : m_values) {
        check_party_count(m);
        for (const Protocol protocol : kAllProtocols) {
            EfficiencyReport row;
            row.protocol = protocol;
            row.m = m;
            row.eta1 = eta1(protocol, m);
            row.c = 1;
            row.q = row.eta1.den; // eta1 == c/q with c == 1
            if (protocol == Protocol::Proposed) {
                row.b = m - 2;
                row.eta2 = eta2_proposed(m);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string render_table_text(const std::vector<EfficiencyReport>& rows) {
    char line[128];
    std::string out;
    std::snprintf(line, sizeof(line), "%-4s %-9s %-7s %-9s %-7s %s\n", "m", "protocol", "eta1",
                  "eta1_pct", "eta2", "eta2_pct");
    out += line;
    for (const EfficiencyReport& row : rows) {
        const std::string e2 = row.eta2 ? row.eta2->str() : "-";
        const std::string e2p = row.eta2 ? render_percentage(*row.eta2) : "-";
        std::snprintf(line, sizeof(line), "%-4lld %-9s %-7s %-9s %-7s %s\n", row.m,
                      name(row.protocol), row.eta1.str().c_str(),
                      render_percentage(row.eta1).c_str(), e2.c_str(), e2p.c_str());
        out += line;
    }
    return out;
}

std::string render_table_csv(const std::vector<EfficiencyReport>& rows) {
    std::string out = "m,protocol,eta1,eta1_pct,eta2,eta2_pct\n";
    for (const EfficiencyReport& row : rows) {
        out += std::to_string(row.m);
        out += ',';
        out += name(row.protocol);
        out += ',';
        out += row.eta1.str();
        out += ',';
        out += render_percentage(row.eta1);
        out += ',';
        out += row.eta2 ? row.eta2->str() : "-";
        out += ',';
        out += row.eta2 ? render_percentage(*row.eta2) : "-";
        out += '\n';
    }
    return out;
}

Rational measured_eta1(const std::vector<SessionResult>& sessions, std::size_t secret_bits) {
    if (sessions.empty()) {
        throw Error(ErrorCode::NoSessions, "no sessions to aggregate");
    }
    long long qubits = 0;
    for (const SessionResult& s : sessions) {
        if (s.aborted) {
            throw std::invalid_argument("aborted session in efficiency aggregation");
        }
        qubits += static_cast<long long>(s.qubits_sent);
    }
    return Rational(static_cast<long long>(secret_bits), qubits);
}

CollusionAuditReport audit_collusion(std::size_t n_bits, std::size_t num_primaries) {
    if (n_bits < 1 || n_bits > 4 || num_primaries < 1 || num_primaries > 4) {
        throw Error(ErrorCode::BoundsExceeded,
                    "enumeration bounds are 1 <= n_bits <= 4 and 1 <= primaries <= 4");
    }

    CollusionAuditReport report;
    report.n_bits = n_bits;
    report.num_primaries = num_primaries;

    const std::size_t total_bits = n_bits * num_primaries;
    const std::uint64_t assignments = 1ull << total_bits;
    report.assignments = assignments;

    const std::uint32_t full_mask = (1u << num_primaries) - 1;
    std::vector<SubsetStat> subsets;
    for (std::uint32_t mask = 1; mask < full_mask; ++mask) {
        SubsetStat stat;
        for (std::size_t i = 0; i < num_primaries; ++i) {
            if (mask & (1u << i)) stat.members.push_back(i);
        }
        stat.total = assignments;
        subsets.push_back(std::move(stat));
    }

    std::vector<Contribution> keys(num_primaries);
    for (std::size_t i = 0; i < num_primaries; ++i) {
        keys[i].agent = AgentId("P" + std::to_string(i));
    }

    for (std::uint64_t assignment = 0; assignment < assignments; ++assignment) {
        for (std::size_t i = 0; i < num_primaries; ++i) {
            Key k(n_bits);
            for (std::size_t b = 0; b < n_bits; ++b) {
                k.set_bit(b, static_cast<int>((assignment >> (i * n_bits + b)) & 1));
            }
            keys[i].value = std::move(k);
        }
        const Key master = collusion_xor(keys);
        for (SubsetStat& stat : subsets) {
            std::vector<Contribution> subset;
            subset.reserve(stat.members.size());
            for (const std::size_t i : stat.members) {
                subset.push_back(keys[i]);
            }
            if (collusion_xor(subset) == master) {
                ++stat.matches;
            }
        }
    }

    // Zero information <=> every subset hits the master key in exactly 2^-n of
    // the assignments.
    bool pass = true;
    for (const SubsetStat& stat : subsets) {
        if (stat.matches * (1ull << n_bits) != stat.total) {
            pass = false;
        }
    }
    report.subsets = std::move(subsets);
    report.pass = pass;
    return report;
}

std::string render_audit(const CollusionAuditReport& report) {
    std::string out = "collusion audit n_bits=" + std::to_string(report.n_bits) +
                      " primaries=" + std::to_string(report.num_primaries) +
                      " assignments=" + std::to_string(report.assignments) + "\n";
    for (const SubsetStat& stat : report.subsets) {
        out += "  subset={";
        for (std::size_t i = 0; i < stat.members.size(); ++i) {
            if (i != 0) out += ' ';
            out += "P" + std::to_string(stat.members[i]);
        }
        out += "} matches=" + std::to_string(stat.matches) + "/" + std::to_string(stat.total);
        out += " fraction=" +
               Rational(static_cast<long long>(stat.matches), static_cast<long long>(stat.total))
                   .str();
        out += '\n';
    }
    out += report.pass ? "  PASS: every proper subset is uninformative\n"
                       : "  FAIL: some subset deviates from uniform\n";
    return out;
}

LockAuditReport audit_permutation_lock(std::size_t n_bits) {
    if (n_bits < 1 || n_bits > 4) {
        throw Error(ErrorCode::BoundsExceeded, "enumeration bound is 1 <= n_bits <= 4");
    }

    LockAuditReport report;
    report.n_bits = n_bits;

    // All permutations of n positions.
    std::vector<std::uint32_t> base(n_bits);
    std::iota(base.begin(), base.end(), 0u);
    std::vector<Permutation> perms;
    do {
        perms.push_back(Permutation::from_mapping(base));
    } while (std::next_permutation(base.begin(), base.end()));

    const AgentId bob("Bob");
    const AgentId david("David");
    Key bob_key(n_bits);
    bob_key.set_bit(0, 1); // fixed companion share, exercises the multi-agent path

    const std::uint64_t key_count = 1ull << n_bits;
    for (std::uint64_t bits = 0; bits < key_count; ++bits) {
        Key david_key(n_bits);
        for (std::size_t b = 0; b < n_bits; ++b) {
            david_key.set_bit(b, static_cast<int>((bits >> b) & 1));
        }
        for (const Permutation& perm : perms) {
            ++report.cases;
            if (perm.apply(david_key) == david_key) {
                ++report.fixed_point_cases;
            }

            HierarchyTree tree(AgentId("Alice"), n_bits);
            tree.insert_primary(bob, bob_key);
            tree.insert_primary(david, david_key);
            tree.lock_agent_with(david, perm);
            const std::set<AgentId> everyone{bob, david};

            if (recover_master(tree, everyone) == tree.master_key()) {
                ++report.pre_disclosure_matches;
            }
            tree.disclose(david);
            if (recover_master(tree, everyone) == tree.master_key()) {
                ++report.post_disclosure_matches;
            }
        }
    }

    report.pass = report.pre_disclosure_matches == report.fixed_point_cases &&
                  report.post_disclosure_matches == report.cases;
    return report;
}

} // namespace hdqss::analysis
