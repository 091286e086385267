#include <algorithm>
#include <set>
#include <utility>

#include "boxology/sim/simulators.hpp"

namespace boxology::sim {

BdiConfig BdiConfig::from_json(const nlohmann::json& j) {
    BdiConfig cfg;
    try {
        for (auto it = j.at("environment").begin(); it != j.at("environment").end(); ++it)
            cfg.environment[it.key()] = it.value().get<double>();
        if (j.contains("env_updates"))
            for (const auto& ju : j.at("env_updates"))
                cfg.env_updates.push_back(
                    {ju.at("sensor").get<std::string>(), ju.at("delta").get<double>()});
        if (j.contains("belief_rules"))
            for (const auto& jr : j.at("belief_rules"))
                cfg.belief_rules.push_back({jr.at("sensor").get<std::string>(),
                                            jr.at("comparator").get<std::string>(),
                                            jr.at("threshold").get<double>(),
                                            jr.at("belief").get<std::string>()});
        if (j.contains("desire_rules"))
            for (const auto& jr : j.at("desire_rules"))
                cfg.desire_rules.push_back({jr.at("beliefs").get<std::vector<std::string>>(),
                                            jr.at("goal").get<std::string>()});
        if (j.contains("plans"))
            for (const auto& jp : j.at("plans"))
                cfg.plans.push_back({jp.at("goal").get<std::string>(),
                                     jp.at("actions").get<std::vector<std::string>>()});
        if (j.contains("action_effects"))
            for (const auto& ja : j.at("action_effects"))
                cfg.action_effects.push_back({ja.at("action").get<std::string>(),
                                              ja.at("sensor").get<std::string>(),
                                              ja.at("delta").get<double>()});
        for (const auto& ja : j.at("actors")) {
            Actor a;
            a.id = ja.at("id").get<std::string>();
            if (ja.contains("share_beliefs")) a.share_beliefs = ja.at("share_beliefs").get<bool>();
            if (ja.contains("sensors")) a.sensors = ja.at("sensors").get<std::vector<std::string>>();
            cfg.actors.push_back(std::move(a));
        }
        cfg.ticks = j.at("ticks").get<long>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
        throw SimError(std::string("bad bdi config: ") + ex.what());
    }
    cfg.validate();
    return cfg;
}

void BdiConfig::validate() const {
    if (ticks < 1) throw SimError("bad config: ticks must be >= 1");
    if (actors.empty()) throw SimError("bad config: need at least one actor");
    std::set<std::string> ids;
    for (const auto& a : actors) {
        if (!ids.insert(a.id).second) throw SimError("bad config: duplicate actor id " + a.id);
        for (const auto& s : a.sensors)
            if (!environment.count(s)) throw SimError("bad config: unknown sensor " + s);
    }
    std::set<std::string> beliefs;
    for (const auto& r : belief_rules) {
        if (!environment.count(r.sensor)) throw SimError("bad config: unknown sensor " + r.sensor);
        static const std::set<std::string> cmps{"<", "<=", ">", ">=", "==", "!="};
        if (!cmps.count(r.comparator))
            throw SimError("bad config: unknown comparator " + r.comparator);
        beliefs.insert(r.belief);
    }
    std::set<std::string> goals;
    for (const auto& r : desire_rules) {
        for (const auto& b : r.beliefs)
            if (!beliefs.count(b)) throw SimError("bad config: desire rule uses unknown belief " + b);
        goals.insert(r.goal);
    }
    std::set<std::string> actions;
    for (const auto& p : plans) {
        if (!goals.count(p.goal)) throw SimError("bad config: plan for unknown goal " + p.goal);
        actions.insert(p.actions.begin(), p.actions.end());
    }
    for (const auto& e : action_effects) {
        if (!actions.count(e.action))
            throw SimError("bad config: effect for unknown action " + e.action);
        if (!environment.count(e.sensor)) throw SimError("bad config: unknown sensor " + e.sensor);
    }
    for (const auto& u : env_updates)
        if (!environment.count(u.sensor)) throw SimError("bad config: unknown sensor " + u.sensor);
}

namespace {

bool holds(double value, const std::string& cmp, double threshold) {
    if (cmp == "<") return value < threshold;
    if (cmp == "<=") return value <= threshold;
    if (cmp == ">") return value > threshold;
    if (cmp == ">=") return value >= threshold;
    if (cmp == "==") return value == threshold;
    return value != threshold;
}

}  // namespace

Trace run_bdi(const BdiConfig& cfg) {
    cfg.validate();
    Trace trace;
    trace.seed = cfg.seed;
    trace.config_echo = {{"actors", cfg.actors.size()}, {"ticks", cfg.ticks}};

    std::map<std::string, double> env = cfg.environment;
    std::map<std::string, std::set<std::string>> world;    // actor -> beliefs
    std::map<std::string, std::set<std::string>> inbox;    // delivered for next tick

    for (long tick = 0; tick < cfg.ticks; ++tick) {
        std::map<std::string, double> deltas;
        // beliefs spoken during this tick are delivered at the next one
        auto delivered = std::exchange(inbox, {});
        for (const auto& actor : cfg.actors) {
            const std::string conv = "bdi-" + actor.id;
            auto& beliefs = world[actor.id];
            beliefs.insert(delivered[actor.id].begin(), delivered[actor.id].end());

            std::vector<std::string> sensors = actor.sensors;
            if (sensors.empty())
                for (const auto& [s, v] : env) sensors.push_back(s);
            std::map<std::string, double> sensed;
            for (const auto& s : sensors) {
                sensed[s] = env.at(s);
                trace.events.push_back({tick, conv, "sense", actor.id, "env",
                                        {{"sensor", s}, {"value", env.at(s)}}, ""});
            }

            std::vector<std::string> fresh;
            for (const auto& rule : cfg.belief_rules) {
                auto it = sensed.find(rule.sensor);
                if (it == sensed.end() || !holds(it->second, rule.comparator, rule.threshold))
                    continue;
                trace.events.push_back({tick, conv, "classify", actor.id, actor.id,
                                        {{"belief", rule.belief}, {"sensor", rule.sensor}}, ""});
                if (beliefs.insert(rule.belief).second) fresh.push_back(rule.belief);
            }

            if (actor.share_beliefs) {
                for (const auto& belief : fresh) {
                    for (const auto& mate : cfg.actors) {
                        if (mate.id == actor.id) continue;
                        trace.events.push_back({tick, conv, "speak", actor.id, mate.id,
                                                {{"belief", belief}}, ""});
                        inbox[mate.id].insert(belief);
                    }
                }
            }

            std::vector<std::string> goals;
            for (const auto& rule : cfg.desire_rules) {
                bool all = std::all_of(rule.beliefs.begin(), rule.beliefs.end(),
                                       [&](const std::string& b) { return beliefs.count(b) > 0; });
                if (!all) continue;
                goals.push_back(rule.goal);
                trace.events.push_back(
                    {tick, conv, "predict", actor.id, actor.id, {{"goal", rule.goal}}, ""});
            }

            std::vector<std::string> actions;
            for (const auto& goal : goals) {
                for (const auto& plan : cfg.plans) {
                    if (plan.goal != goal) continue;
                    actions.insert(actions.end(), plan.actions.begin(), plan.actions.end());
                    trace.events.push_back({tick, conv, "plan", actor.id, actor.id,
                                            {{"goal", goal}, {"actions", plan.actions}}, ""});
                }
            }

            for (const auto& action : actions) {
                trace.events.push_back(
                    {tick, conv, "act", actor.id, "env", {{"action", action}}, ""});
                for (const auto& effect : cfg.action_effects) {
                    if (effect.action == action) deltas[effect.sensor] += effect.delta;
                }
            }
        }
        // environment advances between ticks
        for (const auto& [sensor, delta] : deltas) env[sensor] += delta;
        for (const auto& u : cfg.env_updates) env[u.sensor] += u.delta;
    }
    return trace;
}

std::vector<std::string> check_bdi_ordering(const Trace& trace) {
    static const std::map<std::string, int> phase{
        {"sense", 0}, {"classify", 1}, {"speak", 2}, {"predict", 3}, {"plan", 4}, {"act", 5}};
    std::vector<std::string> violations;
    std::map<std::pair<std::string, long>, int> last;  // (actor, tick) -> last phase
    for (const auto& e : trace.events) {
        auto it = phase.find(e.performative);
        if (it == phase.end()) {
            violations.push_back("unexpected performative '" + e.performative + "'");
            continue;
        }
        auto key = std::make_pair(e.sender, e.tick);
        auto seen = last.find(key);
        if (seen != last.end() && it->second < seen->second) {
            violations.push_back("actor " + e.sender + " tick " + std::to_string(e.tick) + ": '" +
                                 e.performative + "' after a later phase");
        }
        if (seen == last.end() || it->second > seen->second) last[key] = it->second;
    }
    return violations;
}

}  // namespace boxology::sim
