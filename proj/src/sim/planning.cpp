#include <algorithm>
#include <optional>
#include <set>

#include "boxology/sim/simulators.hpp"

namespace boxology::sim {

PlanningConfig PlanningConfig::from_json(const nlohmann::json& j) {
    PlanningConfig cfg;
    try {
        if (j.contains("job_agent")) cfg.job_agent = j.at("job_agent").get<std::string>();
        if (j.contains("pool_agent")) cfg.pool_agent = j.at("pool_agent").get<std::string>();
        for (const auto& jm : j.at("machines")) {
            Machine m;
            m.id = jm.at("id").get<std::string>();
            for (const auto& slot : jm.at("free"))
                m.free.emplace_back(slot.at(0).get<long>(), slot.at(1).get<long>());
            cfg.machines.push_back(std::move(m));
        }
        for (const auto& jj : j.at("jobs")) {
            Job job;
            job.id = jj.at("id").get<std::string>();
            job.duration = jj.at("duration").get<long>();
            job.deadline = jj.at("deadline").get<long>();
            cfg.jobs.push_back(std::move(job));
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
        throw SimError(std::string("bad planning config: ") + ex.what());
    }
    cfg.validate();
    return cfg;
}

void PlanningConfig::validate() const {
    if (machines.empty()) throw SimError("bad config: need at least one machine");
    std::set<std::string> ids;
    for (const auto& m : machines) {
        if (!ids.insert(m.id).second) throw SimError("bad config: duplicate machine id " + m.id);
        auto slots = m.free;
        std::sort(slots.begin(), slots.end());
        for (size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].first >= slots[i].second)
                throw SimError("bad config: empty slot on machine " + m.id);
            if (i > 0 && slots[i].first < slots[i - 1].second)
                throw SimError("bad config: overlapping slots on machine " + m.id);
        }
    }
    std::set<std::string> job_ids;
    for (const auto& job : jobs) {
        if (job.duration < 1) throw SimError("bad config: job duration must be >= 1");
        if (!job_ids.insert(job.id).second)
            throw SimError("bad config: duplicate job id " + job.id);
    }
}

namespace {

struct Bid {
    long start;
    long end;
    long slack;
    std::size_t slot_index;
};

// earliest free slot that fits the duration with completion <= deadline
std::optional<Bid> best_fit(const std::vector<std::pair<long, long>>& free, long duration,
                            long deadline) {
    std::optional<Bid> best;
    for (std::size_t i = 0; i < free.size(); ++i) {
        auto [s, e] = free[i];
        if (s + duration > e || s + duration > deadline) continue;
        if (!best || s < best->start) best = Bid{s, s + duration, deadline - (s + duration), i};
    }
    return best;
}

}  // namespace

std::pair<Schedule, Trace> run_distributed_planning(const PlanningConfig& cfg) {
    cfg.validate();
    Trace trace;
    trace.seed = cfg.seed;
    trace.config_echo = {{"machines", cfg.machines.size()}, {"jobs", cfg.jobs.size()}};
    Schedule schedule;

    // mutable capacity models, sorted slots
    std::vector<PlanningConfig::Machine> capacity = cfg.machines;
    for (auto& m : capacity) std::sort(m.free.begin(), m.free.end());

    long tick = 0;
    for (const auto& job : cfg.jobs) {
        const std::string conv = "job-" + job.id;
        trace.events.push_back({tick, conv, "request", cfg.job_agent, cfg.pool_agent,
                                {{"workorder", job.id},
                                 {"duration", job.duration},
                                 {"deadline", job.deadline}},
                                ""});
        for (const auto& m : capacity)
            trace.events.push_back({tick + 1, conv, "cfp", cfg.pool_agent, m.id,
                                    {{"job", job.id}}, ""});

        struct MachineBid {
            std::size_t machine;
            Bid bid;
        };
        std::vector<MachineBid> bids;
        for (std::size_t i = 0; i < capacity.size(); ++i) {
            auto fit = best_fit(capacity[i].free, job.duration, job.deadline);
            if (fit) {
                bids.push_back({i, *fit});
                trace.events.push_back({tick + 2, conv, "propose", capacity[i].id, cfg.pool_agent,
                                        {{"bid", fit->slack}, {"start", fit->start}}, ""});
            } else {
                trace.events.push_back(
                    {tick + 2, conv, "refuse", capacity[i].id, cfg.pool_agent, nullptr, ""});
            }
        }

        if (bids.empty()) {
            schedule.entries.push_back({job.id, false, "", 0, 0});
            trace.events.push_back({tick + 3, conv, "failure", cfg.pool_agent, cfg.job_agent,
                                    {{"reason", "no feasible machine"}}, ""});
            tick += 4;
            continue;
        }

        // highest slack wins; ties go to the smallest machine id
        const MachineBid* winner = &bids.front();
        for (const auto& b : bids) {
            if (b.bid.slack > winner->bid.slack ||
                (b.bid.slack == winner->bid.slack && capacity[b.machine].id < capacity[winner->machine].id))
                winner = &b;
        }
        auto& wm = capacity[winner->machine];
        trace.events.push_back({tick + 3, conv, "accept", cfg.pool_agent, wm.id,
                                {{"assignment", job.id},
                                 {"start", winner->bid.start},
                                 {"end", winner->bid.end}},
                                ""});
        for (const auto& b : bids) {
            if (&b != winner)
                trace.events.push_back(
                    {tick + 3, conv, "reject", cfg.pool_agent, capacity[b.machine].id, nullptr, ""});
        }

        // consume the slot (capacity model update)
        auto slot = wm.free[winner->bid.slot_index];
        wm.free.erase(wm.free.begin() + static_cast<long>(winner->bid.slot_index));
        if (slot.first < winner->bid.start) wm.free.push_back({slot.first, winner->bid.start});
        if (winner->bid.end < slot.second) wm.free.push_back({winner->bid.end, slot.second});
        std::sort(wm.free.begin(), wm.free.end());

        trace.events.push_back({tick + 4, conv, "inform_result", wm.id, cfg.job_agent,
                                {{"job", job.id},
                                 {"start", winner->bid.start},
                                 {"end", winner->bid.end}},
                                ""});
        schedule.entries.push_back({job.id, true, wm.id, winner->bid.start, winner->bid.end});
        tick += 5;
    }
    return {std::move(schedule), std::move(trace)};
}

}  // namespace boxology::sim
