#include "hdqss/keytree.hpp"

#include <functional>

#include "hdqss/error.hpp"

namespace hdqss {

HierarchyTree::HierarchyTree(AgentId boss, std::size_t key_bits)
    : root_(std::move(boss)), key_bits_(key_bits), master_(Key(key_bits)) {
    if (key_bits == 0) {
        throw Error(ErrorCode::InvalidLength, "key length must be >= 1");
    }
    AgentNode root_node;
    root_node.id = root_;
    root_node.level = 0;
    nodes_.emplace(root_, std::move(root_node));
}

bool HierarchyTree::contains(const AgentId& agent) const {
    return nodes_.count(agent) != 0;
}

const AgentNode& HierarchyTree::node(const AgentId& agent) const {
    const auto it = nodes_.find(agent);
    if (it == nodes_.end()) {
        throw Error(ErrorCode::UnknownAgent, "no agent '" + agent.id + "' in the tree", agent.id);
    }
    return it->second;
}

AgentNode& HierarchyTree::node_mut(const AgentId& agent) {
    return const_cast<AgentNode&>(node(agent));
}

std::vector<AgentId> HierarchyTree::agents() const {
    std::vector<AgentId> out;
    out.reserve(nodes_.size());
    for (const auto& [id, _] : nodes_) {
        out.push_back(id);
    }
    return out;
}

std::vector<AgentId> HierarchyTree::primary_agents() const {
    std::vector<AgentId> out;
    const AgentNode& root_node = node(root_);
    out.reserve(root_node.subordinate_keys.size());
    for (const auto& [id, _] : root_node.subordinate_keys) {
        out.push_back(id);
    }
    return out;
}

void HierarchyTree::insert_child(const AgentId& boss, const AgentId& agent, const Key& boss_copy,
                                 const Key& agent_view) {
    AgentNode& boss_node = node_mut(boss);
    AgentNode child;
    child.id = agent;
    child.level = boss_node.level + 1;
    child.parent = boss;
    child.share_key = agent_view;
    boss_node.subordinate_keys.emplace(agent, boss_copy);
    boss_node.included_subordinates.insert(agent);
    nodes_.emplace(agent, std::move(child));
    if (boss == root_) {
        master_ ^= boss_copy;
    }
}

SessionResult HierarchyTree::join_primary(const AgentId& agent, const SubprotocolKind& kind,
                                          RandomSource& rng) {
    if (contains(agent)) {
        throw Error(ErrorCode::DuplicateAgent, "agent '" + agent.id + "' is already in the tree",
                    agent.id);
    }
    SessionResult r = establish_key(kind, key_bits_, rng);
    if (r.aborted) {
        return r;
    }
    insert_child(root_, agent, r.key_initiator, r.key_responder);
    return r;
}

SessionResult HierarchyTree::join_secondary(const AgentId& boss, const AgentId& agent,
                                            const SubprotocolKind& kind, RandomSource& rng) {
    if (!contains(boss)) {
        throw Error(ErrorCode::UnknownBoss, "no boss '" + boss.id + "' in the tree", boss.id);
    }
    if (boss == root_) {
        // Recruits of the root are primary agents by definition.
        throw Error(ErrorCode::LevelMismatch, "joining under the root is a primary join",
                    boss.id);
    }
    if (contains(agent)) {
        throw Error(ErrorCode::DuplicateAgent, "agent '" + agent.id + "' is already in the tree",
                    agent.id);
    }
    SessionResult r = establish_key(kind, key_bits_, rng);
    if (r.aborted) {
        return r;
    }
    insert_child(boss, agent, r.key_initiator, r.key_responder);
    return r;
}

void HierarchyTree::insert_primary(const AgentId& agent, const Key& share) {
    if (contains(agent)) {
        throw Error(ErrorCode::DuplicateAgent, "agent '" + agent.id + "' is already in the tree",
                    agent.id);
    }
    if (share.size() != key_bits_) {
        throw Error(ErrorCode::LengthMismatch,
                    "share key has " + std::to_string(share.size()) + " bits, tree uses " +
                        std::to_string(key_bits_));
    }
    insert_child(root_, agent, share, share);
}

void HierarchyTree::insert_secondary(const AgentId& boss, const AgentId& agent, const Key& share) {
    if (!contains(boss)) {
        throw Error(ErrorCode::UnknownBoss, "no boss '" + boss.id + "' in the tree", boss.id);
    }
    if (boss == root_) {
        throw Error(ErrorCode::LevelMismatch, "joining under the root is a primary join",
                    boss.id);
    }
    if (contains(agent)) {
        throw Error(ErrorCode::DuplicateAgent, "agent '" + agent.id + "' is already in the tree",
                    agent.id);
    }
    if (share.size() != key_bits_) {
        throw Error(ErrorCode::LengthMismatch,
                    "share key has " + std::to_string(share.size()) + " bits, tree uses " +
                        std::to_string(key_bits_));
    }
    insert_child(boss, agent, share, share);
}

Key HierarchyTree::effective_primary_contribution(const AgentNode& primary) const {
    const Key& boss_copy = node(root_).subordinate_keys.at(primary.id);
    const auto lock = locks_.find(primary.id);
    if (lock != locks_.end()) {
        return lock->second.permutation.apply(boss_copy);
    }
    return boss_copy;
}

void HierarchyTree::revoke(const AgentId& agent) {
    if (agent == root_) {
        throw Error(ErrorCode::CannotRevokeRoot, "the boss cannot be revoked");
    }
    const AgentNode& target = node(agent);

    if (target.level == 1) {
        // The boss refreshes the master key with the copy she holds.
        master_ ^= effective_primary_contribution(target);
    }

    AgentNode& boss_node = node_mut(*target.parent);
    boss_node.subordinate_keys.erase(agent);
    boss_node.included_subordinates.erase(agent);

    // Detach the whole subtree; descendants must rejoin via fresh sub-protocol runs.
    std::vector<AgentId> pending{agent};
    while (!pending.empty()) {
        const AgentId current = std::move(pending.back());
        pending.pop_back();
        const AgentNode& current_node = node(current);
        for (const auto& [child, _] : current_node.subordinate_keys) {
            pending.push_back(child);
        }
        locks_.erase(current);
        nodes_.erase(current);
    }
}

SessionResult HierarchyTree::promote(const AgentId& agent, const AgentId& new_boss,
                                     const SubprotocolKind& kind, RandomSource& rng) {
    const AgentNode& target = node(agent);
    const AgentNode& boss_node = node(new_boss);
    if (target.level < 2) {
        throw Error(ErrorCode::LevelMismatch,
                    "agent '" + agent.id + "' is already at level " +
                        std::to_string(target.level),
                    agent.id);
    }
    if (boss_node.level + 2 != target.level) {
        throw Error(ErrorCode::LevelMismatch,
                    "new boss '" + new_boss.id + "' is at level " +
                        std::to_string(boss_node.level) + ", need level " +
                        std::to_string(target.level - 2),
                    new_boss.id);
    }
    SessionResult r = establish_key(kind, key_bits_, rng);
    if (r.aborted) {
        return r; // tree untouched
    }
    revoke(agent);
    insert_child(new_boss, agent, r.key_initiator, r.key_responder);
    return r;
}

Key HierarchyTree::residual_key(const AgentId& agent) const {
    const AgentNode& n = node(agent);
    if (agent == root_) {
        throw Error(ErrorCode::UnknownAgent, "the boss holds the master key, not a share",
                    agent.id);
    }
    Key out = n.share_key;
    for (const AgentId& sub : n.included_subordinates) {
        out ^= n.subordinate_keys.at(sub);
    }
    return out;
}

void HierarchyTree::set_inclusion(const AgentId& boss, const AgentId& child, bool included) {
    AgentNode& boss_node = node_mut(boss);
    node(child);
    if (boss_node.subordinate_keys.count(child) == 0) {
        throw Error(ErrorCode::NotAChild,
                    "'" + child.id + "' is not a subordinate of '" + boss.id + "'", child.id);
    }
    if (included) {
        boss_node.included_subordinates.insert(child);
    } else {
        boss_node.included_subordinates.erase(child);
    }
}

const ControlledState& HierarchyTree::lock_agent(const AgentId& agent, RandomSource& rng) {
    // Validate before consuming any draws.
    const AgentNode& target = node(agent);
    if (target.level != 1) {
        throw Error(ErrorCode::NotPrimary, "only primary agents can be locked", agent.id);
    }
    if (locks_.count(agent) != 0) {
        throw Error(ErrorCode::AlreadyLocked, "agent '" + agent.id + "' already has a lock",
                    agent.id);
    }
    return lock_agent_with(agent, Permutation::random(key_bits_, rng));
}

const ControlledState& HierarchyTree::lock_agent_with(const AgentId& agent,
                                                      Permutation permutation) {
    const AgentNode& target = node(agent);
    if (target.level != 1) {
        throw Error(ErrorCode::NotPrimary, "only primary agents can be locked", agent.id);
    }
    if (locks_.count(agent) != 0) {
        throw Error(ErrorCode::AlreadyLocked, "agent '" + agent.id + "' already has a lock",
                    agent.id);
    }
    if (permutation.size() != key_bits_) {
        throw Error(ErrorCode::LengthMismatch,
                    "permutation on " + std::to_string(permutation.size()) +
                        " positions, tree uses " + std::to_string(key_bits_) + " bits");
    }
    const Key& boss_copy = node(root_).subordinate_keys.at(agent);
    master_ ^= boss_copy;
    master_ ^= permutation.apply(boss_copy);
    auto [it, _] = locks_.emplace(agent, ControlledState{agent, std::move(permutation), false});
    return it->second;
}

Permutation HierarchyTree::disclose(const AgentId& agent) {
    const auto it = locks_.find(agent);
    if (it == locks_.end()) {
        throw Error(ErrorCode::NotLocked, "agent '" + agent.id + "' holds no lock", agent.id);
    }
    if (it->second.disclosed) {
        throw Error(ErrorCode::AlreadyDisclosed,
                    "lock on '" + agent.id + "' was already disclosed", agent.id);
    }
    it->second.disclosed = true;
    return it->second.permutation;
}

const ControlledState* HierarchyTree::lock_state(const AgentId& agent) const {
    const auto it = locks_.find(agent);
    return it == locks_.end() ? nullptr : &it->second;
}

std::string describe(const HierarchyTree& tree) {
    std::string out;
    const std::function<void(const AgentId&, std::size_t)> walk = [&](const AgentId& id,
                                                                      std::size_t depth) {
        const AgentNode& n = tree.node(id);
        out.append(2 * depth, ' ');
        out += id.id;
        out += " level=" + std::to_string(n.level);
        if (id == tree.root()) {
            out += " km_fp=" + fingerprint(tree.master_key());
        } else {
            out += " share_fp=" + fingerprint(n.share_key);
            if (const ControlledState* lock = tree.lock_state(id)) {
                out += lock->disclosed ? " lock=disclosed" : " lock=held";
            }
        }
        if (!n.subordinate_keys.empty()) {
            out += " included=[";
            bool first = true;
            for (const AgentId& sub : n.included_subordinates) {
                if (!first) out += ' ';
                out += sub.id;
                first = false;
            }
            out += ']';
        }
        out += '\n';
        for (const auto& [child, _] : n.subordinate_keys) {
            walk(child, depth + 1);
        }
    };
    walk(tree.root(), 0);
    return out;
}

} // namespace hdqss
