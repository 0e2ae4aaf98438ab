#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hdqss/analysis.hpp"
#include "hdqss/keytree.hpp"
#include "hdqss/sharing.hpp"

namespace hdqss::harness {

// Sub-protocol selector as written in scenario files: `oracle`, or `bb84` with
// optional k=v options (eve=, flip=, threshold=). An absent threshold falls
// back to the run configuration.
struct SubprotocolSpec {
    bool oracle = true;
    ChannelModel channel;
    std::optional<double> qber_threshold;

    SubprotocolKind resolve(double default_threshold) const {
        if (oracle) {
            return SubprotocolKind::oracle();
        }
        return SubprotocolKind::bb84_with(channel, qber_threshold.value_or(default_threshold));
    }
};

struct JoinPrimaryEvent {
    AgentId agent;
    SubprotocolSpec sub;
};
struct JoinSecondaryEvent {
    AgentId boss;
    AgentId agent;
    SubprotocolSpec sub;
};
struct RevokeEvent {
    AgentId agent;
};
struct PromoteEvent {
    AgentId agent;
    AgentId new_boss;
    SubprotocolSpec sub;
};
struct SetInclusionEvent {
    AgentId boss;
    AgentId child;
    bool included = true;
};
struct LockEvent {
    AgentId agent;
};
struct DiscloseEvent {
    std::optional<AgentId> agent; // absent: most recent undisclosed lock
};
struct BroadcastEvent {
    std::string message_hex;
};
struct RecoverEvent {
    std::vector<AgentId> participants;
};
struct RecoverMessageEvent {};
struct AuditCollusionEvent {
    std::size_t n_bits = 0;
    std::size_t primaries = 0;
};
struct EmitTableEvent {
    std::vector<long long> m_values;
};

using EventPayload =
    std::variant<JoinPrimaryEvent, JoinSecondaryEvent, RevokeEvent, PromoteEvent,
                 SetInclusionEvent, LockEvent, DiscloseEvent, BroadcastEvent, RecoverEvent,
                 RecoverMessageEvent, AuditCollusionEvent, EmitTableEvent>;

struct ScenarioEvent {
    int line = 0;
    std::string text; // trimmed source line, comment stripped
    EventPayload payload;
};

struct Scenario {
    std::vector<ScenarioEvent> events;
};

// Line-oriented grammar: `<directive> <args...>`, `#` comments, blank lines
// skipped, case-sensitive directives. Unknown directives and malformed
// arguments raise ParseError with the line number.
Scenario parse_scenario(std::string_view text);

// Directive vocabulary, for documentation and the grammar-coverage meta-test.
const std::vector<std::string>& directives();

struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t key_bits = 128;
    double qber_threshold = kDefaultQberThreshold;
    AgentId boss = AgentId("Alice");
};

struct EventRecord {
    int index = 0;
    std::string directive;
    std::string outcome;                   // "ok ...", "aborted ...", "error ..."
    std::vector<std::string> public_lines; // announcements, fingerprints, tables
    std::string km_fingerprint;            // master-key fingerprint after the event
};

struct Transcript {
    RunConfig config;
    std::vector<EventRecord> events;
    std::size_t sessions = 0;     // successful key establishments
    std::size_t total_qubits = 0; // over successful sessions
    std::optional<analysis::Rational> eta1_measured;
    std::string final_tree;
    bool had_error = false; // any structural-error outcome (aborts excluded)
};

// Executes events in order against a fresh tree. Protocol aborts and domain
// errors are recorded as outcomes, never crashes; only configuration problems
// (e.g. key_bits == 0) throw.
Transcript run_scenario(const Scenario& scenario, const RunConfig& config);

enum class ReportFormat { Text, Csv };

std::string emit_report(const Transcript& transcript, ReportFormat format);

} // namespace hdqss::harness
