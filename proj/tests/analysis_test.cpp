#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "hdqss/analysis.hpp"
#include "hdqss/error.hpp"

using namespace hdqss;
using namespace hdqss::analysis;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("eta1 closed forms at m=3 and m=50") {
    CHECK(eta1(Protocol::Proposed, 3) == Rational(1, 4));
    CHECK(eta1(Protocol::Hsu, 3) == Rational(1, 6));
    CHECK(eta1(Protocol::Jia, 3) == Rational(1, 10));
    CHECK(eta1(Protocol::Liao, 3) == Rational(1, 5));

    CHECK(eta1(Protocol::Proposed, 50) == Rational(1, 98));
    CHECK(eta1(Protocol::Hsu, 50) == Rational(1, 100));
    CHECK(eta1(Protocol::Jia, 50) == Rational(1, 198));
    CHECK(eta1(Protocol::Liao, 50) == Rational(1, 99));

    CHECK_THROWS_AS(eta1(Protocol::Hsu, 1), Error);
}

TEST_CASE("percentage rendering matches the published rounding") {
    CHECK(render_percentage(eta1(Protocol::Hsu, 3)) == "16.67%");
    CHECK(render_percentage(eta1(Protocol::Jia, 3)) == "10%");
    CHECK(render_percentage(eta1(Protocol::Liao, 3)) == "20%");
    CHECK(render_percentage(eta1(Protocol::Proposed, 3)) == "25%");
    CHECK(render_percentage(eta1(Protocol::Hsu, 50)) == "1%");
    CHECK(render_percentage(eta1(Protocol::Jia, 50)) == "0.51%");
    CHECK(render_percentage(eta1(Protocol::Liao, 50)) == "1.01%");
    CHECK(render_percentage(eta1(Protocol::Proposed, 50)) == "1.02%");
    CHECK(render_percentage(eta1(Protocol::Proposed, 2)) == "50%");
}

TEST_CASE("eta2 is 1/(3m-4) with b = m-2 helper bits") {
    CHECK(eta2_proposed(2) == Rational(1, 2)); // single agent needs no helper bits
    CHECK(eta2_proposed(3) == Rational(1, 5));
    CHECK(eta2_proposed(50) == Rational(1, 146));
    for (long long m = 2; m <= 100; ++m) {
        CHECK(eta2_proposed(m) == Rational(1, 3 * m - 4));
    }
    CHECK_THROWS_AS(eta2_proposed(1), Error);
}

TEST_CASE("efficiency ordering, ceiling and convergence") {
    for (long long m = 2; m <= 100; ++m) {
        const Rational proposed = eta1(Protocol::Proposed, m);
        const Rational liao = eta1(Protocol::Liao, m);
        const Rational hsu = eta1(Protocol::Hsu, m);
        const Rational jia = eta1(Protocol::Jia, m);
        CHECK(jia < hsu);
        CHECK(hsu < liao);
        CHECK(liao < proposed);
        // Ceiling: never above one secret bit per two qubits.
        CHECK_FALSE(Rational(1, 2) < proposed);
        CHECK((proposed == Rational(1, 2)) == (m == 2));
        // eta2 counts strictly more resources for m > 2.
        if (m > 2) {
            CHECK(eta2_proposed(m) < proposed);
        }
    }
    // Strict decrease in m, and the Proposed/Liao gap shrinks to nothing.
    for (long long m = 2; m <= 99; ++m) {
        for (const Protocol protocol : kAllProtocols) {
            CHECK(eta1(protocol, m + 1) < eta1(protocol, m));
        }
        const auto gap = [](long long parties) {
            return eta1(Protocol::Proposed, parties).value() -
                   eta1(Protocol::Liao, parties).value();
        };
        CHECK(gap(m + 1) < gap(m));
    }
    // At 50 parties the three single-qubit-competitive protocols round to
    // within 0.02 percentage points of each other.
    const auto hundredths = [](const Rational& r) {
        return (r.num * 10000 + r.den / 2) / r.den;
    };
    const long long hsu = hundredths(eta1(Protocol::Hsu, 50));
    const long long liao = hundredths(eta1(Protocol::Liao, 50));
    const long long proposed = hundredths(eta1(Protocol::Proposed, 50));
    CHECK(proposed - hsu <= 2);
    CHECK(proposed - liao <= 1);
}

TEST_CASE("comparison table rows carry exact accounting") {
    const auto rows = comparison_table({2});
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(Rational(row.c, row.q) == row.eta1);
        if (row.eta2) {
            CHECK(Rational(row.c, row.q + row.b) == *row.eta2);
        }
    }
    CHECK(rows[3].protocol == Protocol::Proposed);
    CHECK(render_percentage(rows[3].eta1) == "50%");
    CHECK(rows[3].b == 0);
    CHECK_THROWS_AS(comparison_table({1}), Error);
}

TEST_CASE("table renderer matches the golden file for m=3 and m=50") {
    const std::string rendered = render_table_text(comparison_table({3, 50}));
    CHECK(rendered == read_file(std::string(HDQSS_GOLDEN_DIR) + "/table1_m3_m50.txt"));

    const std::string csv = render_table_csv(comparison_table({3, 50}));
    CHECK(csv.find("3,Proposed,1/4,25%,1/5,20%") != std::string::npos);
    CHECK(csv.find("50,Jia,1/198,0.51%,-,-") != std::string::npos);
}

TEST_CASE("measured efficiency over sessions") {
    SessionResult a;
    a.key_initiator = Key(1);
    a.key_responder = Key(1);
    a.qubits_sent = 2;
    SessionResult b = a;
    // Two oracle-style sessions at n=1: one secret bit per four qubits.
    CHECK(measured_eta1({a, b}, 1) == Rational(1, 4));
    CHECK_THROWS_AS(measured_eta1({}, 1), Error);

    SessionResult aborted = a;
    aborted.aborted = true;
    CHECK_THROWS_AS(measured_eta1({aborted}, 1), std::invalid_argument);
}

TEST_CASE("collusion audit is exactly uniform inside the bounds") {
    const CollusionAuditReport small = audit_collusion(2, 3);
    CHECK(small.pass);
    CHECK(small.assignments == 64);
    CHECK(small.subsets.size() == 6); // nonempty proper subsets of 3
    for (const auto& stat : small.subsets) {
        CHECK(stat.matches * 4 == stat.total);
    }

    const CollusionAuditReport tiny = audit_collusion(1, 2);
    CHECK(tiny.pass);
    for (const auto& stat : tiny.subsets) {
        CHECK(stat.matches * 2 == stat.total); // singletons match half the time
    }

    CHECK_THROWS_AS(audit_collusion(5, 3), Error);
    CHECK_THROWS_AS(audit_collusion(2, 5), Error);
    CHECK_THROWS_AS(audit_collusion(0, 2), Error);

    const std::string rendered = render_audit(small);
    CHECK(rendered.find("PASS") != std::string::npos);
    CHECK(rendered.find("fraction=1/4") != std::string::npos);
}

TEST_CASE("rational normalization and rendering") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(1, 98).str() == "1/98");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}
