#include "boxology/sim/protocol.hpp"

#include <map>

namespace boxology::sim {

namespace {

bool role_matches(const std::string& want, const std::string& got) {
    return want == "*" || want == got;
}

}  // namespace

ConformanceReport check_trace(const Trace& trace, const ProtocolSpec& spec) {
    ConformanceReport report;

    std::map<std::string, std::string> state;      // conversation -> fsm state
    std::map<std::string, std::string> initiator;  // conversation -> initiator actor
    std::vector<std::string> order;

    auto role_of = [&](const std::string& conv, const std::string& actor) -> std::string {
        if (actor == "env") return "env";
        return actor == initiator.at(conv) ? "initiator" : "participant";
    };

    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const auto& e = trace.events[i];
        if (!state.count(e.conversation)) {
            state[e.conversation] = spec.initial;
            initiator[e.conversation] = e.sender;
            order.push_back(e.conversation);
        }
        std::string& cur = state[e.conversation];
        if (spec.terminals.count(cur)) {
            report.violations.push_back(
                {i, e.conversation, cur, "event after terminal state '" + cur + "'"});
            continue;
        }
        std::string sender_role = role_of(e.conversation, e.sender);
        std::string receiver_role = role_of(e.conversation, e.receiver);
        const ProtocolSpec::Transition* hit = nullptr;
        for (const auto& t : spec.transitions) {
            if (t.state == cur && t.performative == e.performative &&
                role_matches(t.sender_role, sender_role) &&
                role_matches(t.receiver_role, receiver_role)) {
                hit = &t;
                break;
            }
        }
        if (!hit) {
            report.violations.push_back({i, e.conversation, cur,
                                         "no transition for '" + e.performative + "' (" +
                                             sender_role + " -> " + receiver_role + ") in state '" +
                                             cur + "'"});
            continue;
        }
        cur = hit->next;
    }

    for (const auto& conv : order) {
        report.conversations.push_back(
            {conv, state[conv], spec.terminals.count(state[conv]) > 0});
    }
    return report;
}

const ProtocolSpec& contract_net_protocol() {
    static const ProtocolSpec spec{
        "contract-net",
        "start",
        {"start", "collecting", "awarded", "done", "no_award"},
        {"done", "no_award"},
        {
            {"start", "cfp", "initiator", "participant", "collecting"},
            {"collecting", "cfp", "initiator", "participant", "collecting"},
            {"collecting", "propose", "participant", "initiator", "collecting"},
            {"collecting", "refuse", "participant", "initiator", "collecting"},
            {"collecting", "accept", "initiator", "participant", "awarded"},
            {"collecting", "reject", "initiator", "participant", "collecting"},
            {"collecting", "failure", "initiator", "env", "no_award"},
            {"awarded", "reject", "initiator", "participant", "awarded"},
            {"awarded", "inform_result", "participant", "initiator", "done"},
        },
    };
    return spec;
}

const ProtocolSpec& planning_protocol() {
    // conversation starts with the job agent's request; the pool relays,
    // so roles past the first event are wildcarded
    static const ProtocolSpec spec{
        "distributed-planning",
        "start",
        {"start", "requested", "bidding", "awarded", "done", "unassigned"},
        {"done", "unassigned"},
        {
            {"start", "request", "initiator", "participant", "requested"},
            {"requested", "cfp", "*", "*", "bidding"},
            {"bidding", "cfp", "*", "*", "bidding"},
            {"bidding", "propose", "*", "*", "bidding"},
            {"bidding", "refuse", "*", "*", "bidding"},
            {"bidding", "accept", "*", "*", "awarded"},
            {"bidding", "failure", "*", "*", "unassigned"},
            {"requested", "failure", "*", "*", "unassigned"},
            {"awarded", "reject", "*", "*", "awarded"},
            {"awarded", "inform_result", "*", "initiator", "done"},
        },
    };
    return spec;
}

const ProtocolSpec& federated_protocol() {
    static const ProtocolSpec spec{
        "federated-learning",
        "start",
        {"start", "requested", "done"},
        {"done"},
        {
            {"start", "request", "initiator", "participant", "requested"},
            {"requested", "reply", "participant", "initiator", "done"},
        },
    };
    return spec;
}

}  // namespace boxology::sim
