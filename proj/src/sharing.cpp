#include "hdqss/sharing.hpp"

#include "hdqss/error.hpp"

namespace hdqss {

std::set<AgentId> required_participants(const HierarchyTree& tree) {
    std::set<AgentId> required;
    std::vector<AgentId> pending = tree.primary_agents();
    while (!pending.empty()) {
        const AgentId current = std::move(pending.back());
        pending.pop_back();
        required.insert(current);
        for (const AgentId& sub : tree.node(current).included_subordinates) {
            pending.push_back(sub);
        }
    }
    return required;
}

Key recovery_contribution(const HierarchyTree& tree, const AgentId& agent) {
    Key value = tree.residual_key(agent);
    if (const ControlledState* lock = tree.lock_state(agent); lock && lock->disclosed) {
        const Key& share = tree.node(agent).share_key;
        value ^= share;
        value ^= lock->permutation.apply(share);
    }
    return value;
}

Key recover_master(const HierarchyTree& tree, const std::set<AgentId>& participants) {
    const std::set<AgentId> required = required_participants(tree);
    for (const AgentId& agent : required) {
        if (participants.count(agent) == 0) {
            throw Error(ErrorCode::MissingParticipant,
                        "required agent '" + agent.id + "' is absent", agent.id);
        }
    }
    Key out(tree.key_bits());
    for (const AgentId& agent : required) {
        out ^= recovery_contribution(tree, agent);
    }
    return out;
}

Key collusion_xor(const std::vector<Contribution>& contributions) {
    if (contributions.empty()) {
        throw Error(ErrorCode::EmptyInput, "no contributions to combine");
    }
    Key out(contributions.front().value.size());
    for (const Contribution& c : contributions) {
        out ^= c.value; // LengthMismatch on unequal lengths
    }
    return out;
}

Key broadcast_message(const HierarchyTree& tree, const Key& message) {
    if (tree.primary_agents().empty()) {
        throw Error(ErrorCode::EmptyTree, "no primary agents to share with");
    }
    if (message.size() != tree.key_bits()) {
        throw Error(ErrorCode::LengthMismatch,
                    "message has " + std::to_string(message.size()) + " bits, tree uses " +
                        std::to_string(tree.key_bits()));
    }
    return tree.master_key() ^ message;
}

Key recover_message(const Key& s_a, const Key& recovered_master) {
    if (s_a.size() != recovered_master.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "announcement has " + std::to_string(s_a.size()) +
                        " bits, recovered master has " +
                        std::to_string(recovered_master.size()));
    }
    return s_a ^ recovered_master;
}

} // namespace hdqss
