#include "boxology/sim/trace.hpp"

namespace boxology::sim {

std::string Trace::to_jsonl() const {
    std::string out;
    for (const auto& e : events) {
        nlohmann::ordered_json j;
        j["tick"] = e.tick;
        j["conversation"] = e.conversation;
        j["performative"] = e.performative;
        j["sender"] = e.sender;
        j["receiver"] = e.receiver;
        j["payload"] = e.payload;
        if (!e.diagram_ref.empty()) j["diagram_ref"] = e.diagram_ref;
        out += j.dump();
        out += "\n";
    }
    return out;
}

}  // namespace boxology::sim
