#include "hdqss/harness.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "hdqss/error.hpp"

namespace hdqss::harness {

namespace {

std::string trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && (s[begin] == ' ' || s[begin] == '\t' || s[begin] == '\r')) ++begin;
    while (end > begin && (s[end - 1] == ' ' || s[end - 1] == '\t' || s[end - 1] == '\r')) --end;
    return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string token;
    while (in >> token) {
        tokens.push_back(token);
    }
    return tokens;
}

double parse_real(const std::string& token, int line, const char* what) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
    }
    return value;
}

std::uint64_t parse_count(const std::string& token, int line, const char* what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + token + "'");
    }
    return value;
}

// Parses `oracle` or `bb84 [eve=...] [flip=...] [threshold=...]` from
// tokens[first..].
SubprotocolSpec parse_subprotocol(const std::vector<std::string>& tokens, std::size_t first,
                                  int line) {
    if (first >= tokens.size()) {
        throw ParseError(line, "missing sub-protocol (oracle | bb84 [options])");
    }
    SubprotocolSpec spec;
    const std::string& kind = tokens[first];
    if (kind == "oracle") {
        if (first + 1 != tokens.size()) {
            throw ParseError(line, "oracle takes no options");
        }
        return spec;
    }
    if (kind != "bb84") {
        throw ParseError(line, "unknown sub-protocol '" + kind + "'");
    }
    spec.oracle = false;
    for (std::size_t i = first + 1; i < tokens.size(); ++i) {
        const std::string& option = tokens[i];
        const std::size_t eq = option.find('=');
        if (eq == std::string::npos) {
            throw ParseError(line, "malformed option '" + option + "' (expected key=value)");
        }
        const std::string key = option.substr(0, eq);
        const std::string value = option.substr(eq + 1);
        if (key == "eve") {
            if (value == "none") {
                spec.channel.eve = EveModel::None;
            } else if (value == "intercept" || value == "intercept_random") {
                spec.channel.eve = EveModel::InterceptResendRandomBasis;
            } else if (value == "intercept_z") {
                spec.channel.eve = EveModel::InterceptResendFixedBasis;
                spec.channel.eve_basis = Basis::Z;
            } else if (value == "intercept_x") {
                spec.channel.eve = EveModel::InterceptResendFixedBasis;
                spec.channel.eve_basis = Basis::X;
            } else {
                throw ParseError(line, "unknown eve model '" + value + "'");
            }
        } else if (key == "flip") {
            const double p = parse_real(value, line, "flip probability");
            if (p < 0.0 || p > 1.0) {
                throw ParseError(line, "flip probability must lie in [0, 1]");
            }
            spec.channel.flip_probability = p;
        } else if (key == "threshold") {
            const double t = parse_real(value, line, "qber threshold");
            if (t < 0.0 || t > 1.0) {
                throw ParseError(line, "qber threshold must lie in [0, 1]");
            }
            spec.qber_threshold = t;
        } else {
            throw ParseError(line, "unknown bb84 option '" + key + "'");
        }
    }
    return spec;
}

void expect_args(const std::vector<std::string>& tokens, std::size_t count, int line,
                 const char* usage) {
    if (tokens.size() != count + 1) {
        throw ParseError(line, std::string("expected: ") + usage);
    }
}

} // namespace

const std::vector<std::string>& directives() {
    static const std::vector<std::string> names = {
        "join_primary", "join_secondary", "revoke",          "promote",
        "set_inclusion", "lock",          "disclose",        "broadcast",
        "recover",       "recover_message", "audit_collusion", "emit_table",
    };
    return names;
}

Scenario parse_scenario(std::string_view text) {
    Scenario scenario;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view raw =
            eol == std::string_view::npos ? text.substr(pos) : text.substr(pos, eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> tokens = tokenize(line);
        const std::string& directive = tokens[0];

        ScenarioEvent event;
        event.line = line_no;
        event.text = line;

        if (directive == "join_primary") {
            if (tokens.size() < 3) {
                throw ParseError(line_no, "expected: join_primary <agent> <subprotocol>");
            }
            event.payload = JoinPrimaryEvent{AgentId(tokens[1]),
                                             parse_subprotocol(tokens, 2, line_no)};
        } else if (directive == "join_secondary") {
            if (tokens.size() < 4) {
                throw ParseError(line_no, "expected: join_secondary <boss> <agent> <subprotocol>");
            }
            event.payload = JoinSecondaryEvent{AgentId(tokens[1]), AgentId(tokens[2]),
                                               parse_subprotocol(tokens, 3, line_no)};
        } else if (directive == "revoke") {
            expect_args(tokens, 1, line_no, "revoke <agent>");
            event.payload = RevokeEvent{AgentId(tokens[1])};
        } else if (directive == "promote") {
            if (tokens.size() < 4) {
                throw ParseError(line_no, "expected: promote <agent> <new_boss> <subprotocol>");
            }
            event.payload = PromoteEvent{AgentId(tokens[1]), AgentId(tokens[2]),
                                         parse_subprotocol(tokens, 3, line_no)};
        } else if (directive == "set_inclusion") {
            expect_args(tokens, 3, line_no, "set_inclusion <boss> <child> true|false");
            bool included = false;
            if (tokens[3] == "true") {
                included = true;
            } else if (tokens[3] != "false") {
                throw ParseError(line_no, "inclusion flag must be true or false");
            }
            event.payload = SetInclusionEvent{AgentId(tokens[1]), AgentId(tokens[2]), included};
        } else if (directive == "lock") {
            expect_args(tokens, 1, line_no, "lock <agent>");
            event.payload = LockEvent{AgentId(tokens[1])};
        } else if (directive == "disclose") {
            if (tokens.size() > 2) {
                throw ParseError(line_no, "expected: disclose [<agent>]");
            }
            DiscloseEvent d;
            if (tokens.size() == 2) {
                d.agent = AgentId(tokens[1]);
            }
            event.payload = d;
        } else if (directive == "broadcast") {
            expect_args(tokens, 1, line_no, "broadcast <message_hex>");
            for (const char c : tokens[1]) {
                const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
                                (c >= 'A' && c <= 'F');
                if (!ok) {
                    throw ParseError(line_no, std::string("invalid hex digit '") + c + "'");
                }
            }
            event.payload = BroadcastEvent{tokens[1]};
        } else if (directive == "recover") {
            if (tokens.size() < 2) {
                throw ParseError(line_no, "expected: recover <agent>...");
            }
            RecoverEvent r;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                r.participants.push_back(AgentId(tokens[i]));
            }
            event.payload = std::move(r);
        } else if (directive == "recover_message") {
            expect_args(tokens, 0, line_no, "recover_message");
            event.payload = RecoverMessageEvent{};
        } else if (directive == "audit_collusion") {
            expect_args(tokens, 2, line_no, "audit_collusion <n_bits> <primaries>");
            event.payload = AuditCollusionEvent{
                static_cast<std::size_t>(parse_count(tokens[1], line_no, "bit count")),
                static_cast<std::size_t>(parse_count(tokens[2], line_no, "primary count"))};
        } else if (directive == "emit_table") {
            if (tokens.size() < 2) {
                throw ParseError(line_no, "expected: emit_table <m>...");
            }
            EmitTableEvent t;
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                t.m_values.push_back(
                    static_cast<long long>(parse_count(tokens[i], line_no, "party count")));
            }
            event.payload = std::move(t);
        } else {
            throw ParseError(line_no, "unknown directive '" + directive + "'");
        }
        scenario.events.push_back(std::move(event));
    }
    return scenario;
}

namespace {

std::string format_real(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::string session_summary(const SessionResult& r) {
    if (r.aborted) {
        return std::string("aborted ") + name(r.abort_reason) + " qber=" + format_real(r.qber) +
               " qubits=" + std::to_string(r.qubits_sent) +
               " check=" + std::to_string(r.check_bits_used);
    }
    return "ok qber=" + format_real(r.qber) + " qubits=" + std::to_string(r.qubits_sent) +
           " check=" + std::to_string(r.check_bits_used);
}

// Keys render as hex when the width allows, bits otherwise.
std::string render_key(const Key& key) {
    if (key.size() % 4 == 0) {
        return key.to_hex();
    }
    return key.to_string();
}

struct RunState {
    HierarchyTree tree;
    RandomSource rng;
    double default_threshold;
    std::vector<SessionResult> sessions;
    std::vector<AgentId> lock_order;
    std::optional<Key> last_broadcast;
    std::optional<Key> last_recovered;
};

void record_session(RunState& state, const SessionResult& r, EventRecord& record) {
    record.outcome = session_summary(r);
    if (!r.aborted) {
        state.sessions.push_back(r);
    }
}

void execute(RunState& state, const ScenarioEvent& event, EventRecord& record) {
    std::visit(
        [&](const auto& payload) {
            using T = std::decay_t<decltype(payload)>;
            if constexpr (std::is_same_v<T, JoinPrimaryEvent>) {
                const SessionResult r = state.tree.join_primary(
                    payload.agent, payload.sub.resolve(state.default_threshold), state.rng);
                record_session(state, r, record);
            } else if constexpr (std::is_same_v<T, JoinSecondaryEvent>) {
                const SessionResult r = state.tree.join_secondary(
                    payload.boss, payload.agent, payload.sub.resolve(state.default_threshold),
                    state.rng);
                record_session(state, r, record);
            } else if constexpr (std::is_same_v<T, RevokeEvent>) {
                state.tree.revoke(payload.agent);
                record.outcome = "ok";
            } else if constexpr (std::is_same_v<T, PromoteEvent>) {
                const SessionResult r = state.tree.promote(
                    payload.agent, payload.new_boss,
                    payload.sub.resolve(state.default_threshold), state.rng);
                record_session(state, r, record);
            } else if constexpr (std::is_same_v<T, SetInclusionEvent>) {
                state.tree.set_inclusion(payload.boss, payload.child, payload.included);
                record.outcome = "ok";
            } else if constexpr (std::is_same_v<T, LockEvent>) {
                state.tree.lock_agent(payload.agent, state.rng);
                state.lock_order.push_back(payload.agent);
                record.outcome = "ok";
                record.public_lines.push_back("locked=" + payload.agent.id);
            } else if constexpr (std::is_same_v<T, DiscloseEvent>) {
                AgentId target;
                if (payload.agent) {
                    target = *payload.agent;
                } else {
                    // Most recently installed lock that is still undisclosed.
                    bool found = false;
                    for (auto it = state.lock_order.rbegin(); it != state.lock_order.rend();
                         ++it) {
                        const ControlledState* lock = state.tree.lock_state(*it);
                        if (lock && !lock->disclosed) {
                            target = *it;
                            found = true;
                            break;
                        }
                    }
                    if (!found) {
                        throw Error(ErrorCode::NotLocked, "no undisclosed lock to disclose");
                    }
                }
                const Permutation perm = state.tree.disclose(target);
                record.outcome = "ok";
                record.public_lines.push_back("disclosed=" + target.id +
                                              " permutation=" + perm.to_string());
            } else if constexpr (std::is_same_v<T, BroadcastEvent>) {
                const Key message =
                    Key::from_hex(payload.message_hex, state.tree.key_bits());
                const Key announcement = broadcast_message(state.tree, message);
                state.last_broadcast = announcement;
                record.outcome = "ok";
                record.public_lines.push_back("S_A=" + render_key(announcement));
            } else if constexpr (std::is_same_v<T, RecoverEvent>) {
                const std::set<AgentId> participants(payload.participants.begin(),
                                                     payload.participants.end());
                const Key recovered = recover_master(state.tree, participants);
                state.last_recovered = recovered;
                const bool match = recovered == state.tree.master_key();
                record.outcome = "ok";
                record.public_lines.push_back("recovered_fp=" + fingerprint(recovered) +
                                              " match=" + (match ? "true" : "false"));
            } else if constexpr (std::is_same_v<T, RecoverMessageEvent>) {
                if (!state.last_broadcast) {
                    throw Error(ErrorCode::EmptyInput, "no broadcast announcement yet");
                }
                if (!state.last_recovered) {
                    throw Error(ErrorCode::EmptyInput, "no recovered master key yet");
                }
                const Key message = recover_message(*state.last_broadcast,
                                                    *state.last_recovered);
                record.outcome = "ok";
                record.public_lines.push_back("message=" + render_key(message));
            } else if constexpr (std::is_same_v<T, AuditCollusionEvent>) {
                const analysis::CollusionAuditReport report =
                    analysis::audit_collusion(payload.n_bits, payload.primaries);
                record.outcome = report.pass ? "ok PASS" : "ok FAIL";
                std::istringstream lines(analysis::render_audit(report));
                std::string line;
                while (std::getline(lines, line)) {
                    record.public_lines.push_back(trim(line));
                }
            } else if constexpr (std::is_same_v<T, EmitTableEvent>) {
                const auto rows = analysis::comparison_table(payload.m_values);
                record.outcome = "ok";
                std::istringstream lines(analysis::render_table_text(rows));
                std::string line;
                while (std::getline(lines, line)) {
                    record.public_lines.push_back(line);
                }
            }
        },
        event.payload);
}

} // namespace

Transcript run_scenario(const Scenario& scenario, const RunConfig& config) {
    Transcript transcript;
    transcript.config = config;

    RunState state{HierarchyTree(config.boss, config.key_bits), RandomSource(config.seed),
                   config.qber_threshold,
                   {},
                   {},
                   std::nullopt,
                   std::nullopt};

    int index = 0;
    for (const ScenarioEvent& event : scenario.events) {
        EventRecord record;
        record.index = ++index;
        record.directive = event.text;
        try {
            execute(state, event, record);
        } catch (const Error& e) {
            // Structural failures are data, not crashes.
            record.outcome = std::string("error ") + e.what();
            transcript.had_error = true;
        }
        record.km_fingerprint = fingerprint(state.tree.master_key());
        transcript.events.push_back(std::move(record));
    }

    transcript.sessions = state.sessions.size();
    for (const SessionResult& s : state.sessions) {
        transcript.total_qubits += s.qubits_sent;
    }
    if (!state.sessions.empty()) {
        transcript.eta1_measured =
            analysis::measured_eta1(state.sessions, state.tree.key_bits());
    }
    transcript.final_tree = describe(state.tree);
    return transcript;
}

std::string emit_report(const Transcript& transcript, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::Text) {
        out += "# hdqss transcript\n";
        out += "seed: " + std::to_string(transcript.config.seed) + "\n";
        out += "key_bits: " + std::to_string(transcript.config.key_bits) + "\n";
        out += "qber_threshold: " + format_real(transcript.config.qber_threshold) + "\n";
        out += "boss: " + transcript.config.boss.id + "\n\n";
        for (const EventRecord& record : transcript.events) {
            out += std::to_string(record.index) + ". " + record.directive + "\n";
            out += "   -> " + record.outcome + "\n";
            for (const std::string& line : record.public_lines) {
                out += "   :: " + line + "\n";
            }
            out += "   km_fp=" + record.km_fingerprint + "\n";
        }
        out += "\nsummary: sessions=" + std::to_string(transcript.sessions) +
               " qubits=" + std::to_string(transcript.total_qubits);
        if (transcript.eta1_measured) {
            out += " measured_eta1=" + transcript.eta1_measured->str();
        }
        out += "\ntree:\n";
        out += transcript.final_tree;
        return out;
    }

    out += "transcript,seed=" + std::to_string(transcript.config.seed) +
           ",key_bits=" + std::to_string(transcript.config.key_bits) +
           ",qber_threshold=" + format_real(transcript.config.qber_threshold) + "\n";
    for (const EventRecord& record : transcript.events) {
        out += "event," + std::to_string(record.index) + "," + record.directive + "," +
               record.outcome + "," + record.km_fingerprint + "\n";
        for (const std::string& line : record.public_lines) {
            out += "public," + std::to_string(record.index) + "," + line + "\n";
        }
    }
    out += "summary,sessions=" + std::to_string(transcript.sessions) +
           ",qubits=" + std::to_string(transcript.total_qubits) + ",measured_eta1=" +
           (transcript.eta1_measured ? transcript.eta1_measured->str() : "-") + "\n";
    return out;
}

} // namespace hdqss::harness
