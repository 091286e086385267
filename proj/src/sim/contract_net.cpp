#include <algorithm>
#include <set>
#include <tuple>

#include "boxology/sim/simulators.hpp"

namespace boxology::sim {

ContractNetConfig ContractNetConfig::from_json(const nlohmann::json& j) {
    ContractNetConfig cfg;
    try {
        if (j.contains("initiator")) cfg.initiator = j.at("initiator").get<std::string>();
        for (const auto& jp : j.at("participants")) {
            Participant p;
            p.id = jp.at("id").get<std::string>();
            if (jp.contains("propose_probability"))
                p.propose_probability = jp.at("propose_probability").get<double>();
            if (jp.contains("bid_lo")) p.bid_lo = jp.at("bid_lo").get<long>();
            if (jp.contains("bid_hi")) p.bid_hi = jp.at("bid_hi").get<long>();
            cfg.participants.push_back(std::move(p));
        }
        cfg.deadline_ticks = j.at("deadline_ticks").get<long>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
        throw SimError(std::string("bad contract-net config: ") + ex.what());
    }
    cfg.validate();
    return cfg;
}

void ContractNetConfig::validate() const {
    if (participants.empty()) throw SimError("bad config: need at least one participant");
    if (deadline_ticks < 1) throw SimError("bad config: deadline_ticks must be >= 1");
    std::set<std::string> ids{initiator};
    for (const auto& p : participants) {
        if (p.propose_probability < 0.0 || p.propose_probability > 1.0)
            throw SimError("bad config: propose_probability out of [0,1] for " + p.id);
        if (p.bid_lo > p.bid_hi) throw SimError("bad config: bid bounds inverted for " + p.id);
        if (!ids.insert(p.id).second) throw SimError("bad config: duplicate actor id " + p.id);
    }
}

Trace run_contract_net(const ContractNetConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    Trace trace;
    trace.seed = cfg.seed;
    trace.config_echo = {{"deadline_ticks", cfg.deadline_ticks},
                         {"participants", cfg.participants.size()}};
    const std::string conv = "cn-0";

    for (const auto& p : cfg.participants)
        trace.events.push_back({0, conv, "cfp", cfg.initiator, p.id, nullptr, ""});

    struct Response {
        std::string id;
        long tick;
        bool propose;
        long bid;
    };
    std::vector<Response> responses;
    for (const auto& p : cfg.participants) {
        Response r;
        r.id = p.id;
        r.tick = rng.uniform_int(1, cfg.deadline_ticks + 2);
        r.propose = rng.unit() < p.propose_probability;
        r.bid = rng.uniform_int(p.bid_lo, p.bid_hi);
        responses.push_back(std::move(r));
    }
    std::sort(responses.begin(), responses.end(), [](const Response& a, const Response& b) {
        return std::tie(a.tick, a.id) < std::tie(b.tick, b.id);
    });

    for (const auto& r : responses) {
        if (r.propose) {
            nlohmann::json payload{{"bid", r.bid}};
            if (r.tick > cfg.deadline_ticks) payload["late"] = true;
            trace.events.push_back({r.tick, conv, "propose", r.id, cfg.initiator, payload, ""});
        } else {
            trace.events.push_back({r.tick, conv, "refuse", r.id, cfg.initiator, nullptr, ""});
        }
    }

    const long decision_tick = cfg.deadline_ticks + 3;
    std::vector<const Response*> valid;
    std::vector<const Response*> late;
    for (const auto& r : responses) {
        if (!r.propose) continue;
        (r.tick <= cfg.deadline_ticks ? valid : late).push_back(&r);
    }

    auto by_id = [](const Response* a, const Response* b) { return a->id < b->id; };
    std::sort(valid.begin(), valid.end(), by_id);
    std::sort(late.begin(), late.end(), by_id);

    if (!valid.empty()) {
        // highest bid wins; ties go to the lexicographically smallest id
        const Response* winner = valid.front();
        for (const auto* r : valid) {
            if (r->bid > winner->bid) winner = r;
        }
        trace.events.push_back({decision_tick, conv, "accept", cfg.initiator, winner->id,
                                {{"bid", winner->bid}}, ""});
        for (const auto* r : valid) {
            if (r != winner)
                trace.events.push_back(
                    {decision_tick, conv, "reject", cfg.initiator, r->id, nullptr, ""});
        }
        for (const auto* r : late) {
            trace.events.push_back({decision_tick, conv, "reject", cfg.initiator, r->id,
                                    {{"late", true}}, ""});
        }
        trace.events.push_back({decision_tick + 1, conv, "inform_result", winner->id,
                                cfg.initiator, {{"status", "done"}}, ""});
    } else {
        for (const auto* r : late) {
            trace.events.push_back({decision_tick, conv, "reject", cfg.initiator, r->id,
                                    {{"late", true}}, ""});
        }
        trace.events.push_back(
            {decision_tick, conv, "failure", cfg.initiator, "env", {{"reason", "no-award"}}, ""});
    }
    return trace;
}

}  // namespace boxology::sim
