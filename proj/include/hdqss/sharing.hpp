#pragma once

#include <set>
#include <vector>

#include "hdqss/keytree.hpp"

namespace hdqss {

struct Contribution {
    AgentId agent;
    Key value;
};

// The set of agents whose collaboration recovery structurally requires: all
// primary agents, expanded recursively through each node's included
// subordinates. Excluded (bypassed) subtrees are not needed.
std::set<AgentId> required_participants(const HierarchyTree& tree);

// What `agent` contributes to a recovery: the residual key, with the share
// component replaced by its permuted copy once the agent's lock is disclosed.
// While a lock is undisclosed the agent can only offer the unpermuted share.
Key recovery_contribution(const HierarchyTree& tree, const AgentId& agent);

// XOR of the required set's contributions. Succeeds (equals the master key)
// iff participants cover the required set; absence is detectable and raises
// MissingParticipant, a wrong key value is not — callers compare the result
// against an out-of-band fingerprint or simply use it.
Key recover_master(const HierarchyTree& tree, const std::set<AgentId>& participants);

// Raw XOR of the given contributions, no structural checks: the best value a
// colluding subset can compute.
Key collusion_xor(const std::vector<Contribution>& contributions);

// One-time-pad broadcast: S_A = master_key XOR message. S_A is public.
Key broadcast_message(const HierarchyTree& tree, const Key& message);

// message = S_A XOR recovered_master; exact inverse of broadcast_message when
// the recovered master is correct, and wrong in exactly the bits where it is not.
Key recover_message(const Key& s_a, const Key& recovered_master);

} // namespace hdqss
