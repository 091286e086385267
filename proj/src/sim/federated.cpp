#include "boxology/sim/simulators.hpp"

namespace boxology::sim {

PartialStats partial_stats_of(const std::vector<double>& data) {
    PartialStats s;
    for (double x : data) {
        s.count += 1;
        s.sum += x;
        s.sum_sq += x * x;
    }
    return s;
}

PartialStats integrate_partials(const std::vector<PartialStats>& parts) {
    PartialStats total;
    for (const auto& p : parts) {
        total.count += p.count;
        total.sum += p.sum;
        total.sum_sq += p.sum_sq;
    }
    return total;
}

FederatedConfig FederatedConfig::from_json(const nlohmann::json& j) {
    FederatedConfig cfg;
    try {
        if (j.contains("requester")) cfg.requester = j.at("requester").get<std::string>();
        for (const auto& jp : j.at("partitions"))
            cfg.partitions.push_back(jp.get<std::vector<double>>());
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
        throw SimError(std::string("bad federated config: ") + ex.what());
    }
    cfg.validate();
    return cfg;
}

void FederatedConfig::validate() const {
    if (partitions.empty()) throw SimError("empty team: need at least one partition");
}

std::pair<GlobalStats, Trace> run_federated_learning(const FederatedConfig& cfg) {
    cfg.validate();
    Trace trace;
    trace.seed = cfg.seed;
    trace.config_echo = {{"partitions", cfg.partitions.size()}};

    std::vector<PartialStats> parts;
    for (std::size_t i = 0; i < cfg.partitions.size(); ++i) {
        std::string member = "member_" + std::to_string(i);
        std::string conv = "fed-" + member;
        trace.events.push_back({0, conv, "request", cfg.requester, member,
                                {{"algorithm", "sufficient-stats"}}, ""});
        PartialStats p = partial_stats_of(cfg.partitions[i]);
        parts.push_back(p);
        trace.events.push_back({1, conv, "reply", member, cfg.requester,
                                {{"count", p.count}, {"sum", p.sum}, {"sum_sq", p.sum_sq}}, ""});
    }

    GlobalStats global;
    global.stats = integrate_partials(parts);
    if (global.stats.count == 0) throw SimError("all partitions empty: mean undefined");
    double n = static_cast<double>(global.stats.count);
    global.mean = global.stats.sum / n;
    global.variance = global.stats.sum_sq / n - global.mean * global.mean;
    return {global, std::move(trace)};
}

}  // namespace boxology::sim
