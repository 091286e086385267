#pragma once
// Per-conversation protocol state machines and trace conformance checking.
//
// Role assignment during replay: the sender of a conversation's first
// event plays "initiator", the literal actor "env" plays "env", everyone
// else plays "participant". Transition roles may be "*" wildcards.

#include <set>
#include <string>
#include <vector>

#include "boxology/sim/trace.hpp"

namespace boxology::sim {

struct ProtocolSpec {
    struct Transition {
        std::string state;
        std::string performative;
        std::string sender_role;    // "initiator", "participant", "env" or "*"
        std::string receiver_role;
        std::string next;
    };

    std::string name;
    std::string initial;
    std::set<std::string> states;
    std::set<std::string> terminals;  // absorbing
    std::vector<Transition> transitions;
};

struct ConformanceReport {
    struct Violation {
        std::size_t event_index;
        std::string conversation;
        std::string state;
        std::string reason;
    };
    struct Conversation {
        std::string id;
        std::string final_state;
        bool terminal = false;
    };

    std::vector<Conversation> conversations;
    std::vector<Violation> violations;

    bool conformant() const {
        if (!violations.empty()) return false;
        for (const auto& c : conversations)
            if (!c.terminal) return false;
        return true;
    }
};

ConformanceReport check_trace(const Trace& trace, const ProtocolSpec& spec);

const ProtocolSpec& contract_net_protocol();
const ProtocolSpec& planning_protocol();
const ProtocolSpec& federated_protocol();

}  // namespace boxology::sim
