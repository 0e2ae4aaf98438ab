#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hdqss/key.hpp"
#include "hdqss/permutation.hpp"
#include "hdqss/subprotocol.hpp"

namespace hdqss {

struct AgentId {
    std::string id;
    std::string display_name;

    AgentId() = default;
    AgentId(std::string id_) : id(std::move(id_)), display_name(id) {}
    AgentId(const char* id_) : AgentId(std::string(id_)) {}
    AgentId(std::string id_, std::string display)
        : id(std::move(id_)), display_name(std::move(display)) {}

    // Identity is the opaque id; display_name is presentation only.
    friend bool operator==(const AgentId& a, const AgentId& b) { return a.id == b.id; }
    friend std::strong_ordering operator<=>(const AgentId& a, const AgentId& b) {
        return a.id <=> b.id;
    }
};

// Boss-side record of one permutation lock: the agent's contribution inside the
// master key has been replaced by a permuted copy. Until disclosed the
// permutation is known only to the boss; recovery consults it only once
// disclosed is true.
struct ControlledState {
    AgentId locked_agent;
    Permutation permutation;
    bool disclosed = false;

    bool operator==(const ControlledState&) const = default;
};

struct AgentNode {
    AgentId id;
    std::size_t level = 0; // root/boss = 0, primary agents = 1
    std::optional<AgentId> parent;
    Key share_key;                         // key shared with the immediate boss; empty for root
    std::map<AgentId, Key> subordinate_keys; // boss-held copies, one per current child
    std::set<AgentId> included_subordinates; // delegation choice, subset of children

    bool operator==(const AgentNode&) const = default;
};

// The organizational hierarchy as a single serialized state machine: per-edge
// shared keys, boss-held copies, the XOR-composed master key, and the dynamic
// membership operations. Mutations keep the master-key invariant
//   master_key == XOR over root's children of subordinate_keys[child]
// at every quiescent point (modulo active permutation locks, which substitute
// one child's contribution).
class HierarchyTree {
public:
    HierarchyTree(AgentId boss, std::size_t key_bits);

    const AgentId& root() const noexcept { return root_; }
    std::size_t key_bits() const noexcept { return key_bits_; }
    const Key& master_key() const noexcept { return master_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    bool contains(const AgentId& agent) const;
    const AgentNode& node(const AgentId& agent) const;
    std::vector<AgentId> agents() const;         // all nodes, sorted by id
    std::vector<AgentId> primary_agents() const; // root's children, sorted by id

    // Runs the sub-protocol with the root; on success the new agent enters at
    // level 1 and the master key absorbs the new key. On abort the tree is
    // unchanged and the aborted result is returned.
    SessionResult join_primary(const AgentId& agent, const SubprotocolKind& kind,
                               RandomSource& rng);

    // Runs the sub-protocol with an existing agent; the recruit enters one
    // level below the boss. The master key is untouched: the boss's own
    // contribution absorbs the split.
    SessionResult join_secondary(const AgentId& boss, const AgentId& agent,
                                 const SubprotocolKind& kind, RandomSource& rng);

    // Deterministic insertions with a caller-supplied key; used by audits and
    // tests that need controlled key material. join_* == establish_key + these.
    void insert_primary(const AgentId& agent, const Key& share);
    void insert_secondary(const AgentId& boss, const AgentId& agent, const Key& share);

    // Removes an agent and detaches its whole subtree (descendants must rejoin).
    // Revoking a primary refreshes the master key with the boss-held copy.
    void revoke(const AgentId& agent);

    // Resign-then-recruit under a boss two levels up, with a fresh sub-protocol
    // key. Atomic: an aborted sub-protocol leaves the tree bit-identical.
    SessionResult promote(const AgentId& agent, const AgentId& new_boss,
                          const SubprotocolKind& kind, RandomSource& rng);

    // share_key XOR the boss-held keys of the included subordinates: the
    // agent's effective contribution to recovery. With no subordinates included
    // this is the bypass contribution.
    Key residual_key(const AgentId& agent) const;

    void set_inclusion(const AgentId& boss, const AgentId& child, bool included);

    // Controlled sharing: replaces the agent's contribution inside the master
    // key with a permuted copy. Primary agents only; one lock per agent.
    const ControlledState& lock_agent(const AgentId& agent, RandomSource& rng);
    const ControlledState& lock_agent_with(const AgentId& agent, Permutation permutation);

    // Marks the lock disclosed and returns the permutation; from then on the
    // locked agent can contribute the permuted key and recovery succeeds.
    Permutation disclose(const AgentId& agent);

    const ControlledState* lock_state(const AgentId& agent) const;
    const std::map<AgentId, ControlledState>& locks() const noexcept { return locks_; }

    bool operator==(const HierarchyTree&) const = default;

private:
    AgentNode& node_mut(const AgentId& agent);
    void insert_child(const AgentId& boss, const AgentId& agent, const Key& boss_copy,
                      const Key& agent_view);
    // Boss-held contribution currently folded into the master key.
    Key effective_primary_contribution(const AgentNode& primary) const;

    AgentId root_;
    std::size_t key_bits_ = 0;
    Key master_;
    std::map<AgentId, AgentNode> nodes_;
    std::map<AgentId, ControlledState> locks_;
};

// Stable indented text dump (structure + key fingerprints), for transcripts
// and golden tests.
std::string describe(const HierarchyTree& tree);

} // namespace hdqss
