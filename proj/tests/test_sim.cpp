#include "doctest.h"

#include <cmath>
#include <sstream>

#include "boxology/sim/protocol.hpp"
#include "boxology/sim/simulators.hpp"

using namespace boxology::sim;

namespace {

// first seed whose proposals all arrive before the deadline, so award
// outcomes depend only on the configured bids
std::uint64_t on_time_seed(ContractNetConfig cfg) {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        cfg.seed = seed;
        bool late = false;
        for (const auto& e : run_contract_net(cfg).events) {
            if (e.payload.is_object() && e.payload.contains("late")) late = true;
        }
        if (!late) return seed;
    }
    throw std::runtime_error("no on-time seed found");
}

const EventRecord* find_event(const Trace& t, const std::string& performative) {
    for (const auto& e : t.events)
        if (e.performative == performative) return &e;
    return nullptr;
}

int count_events(const Trace& t, const std::string& performative) {
    int n = 0;
    for (const auto& e : t.events)
        if (e.performative == performative) ++n;
    return n;
}

}  // namespace

TEST_CASE("contract net: highest bid wins, ties to the smallest id") {
    ContractNetConfig cfg;
    cfg.participants = {{"a1", 1.0, 5, 5}, {"a2", 1.0, 7, 7}, {"a3", 1.0, 7, 7}};
    cfg.deadline_ticks = 5;
    cfg.seed = on_time_seed(cfg);

    auto trace = run_contract_net(cfg);
    const auto* accept = find_event(trace, "accept");
    REQUIRE(accept);
    CHECK(accept->receiver == "a2");
    CHECK(accept->payload.at("bid") == 7);
    CHECK(accept->tick == cfg.deadline_ticks + 3);
    CHECK(count_events(trace, "cfp") == 3);
    CHECK(count_events(trace, "reject") == 2);
    const auto* inform = find_event(trace, "inform_result");
    REQUIRE(inform);
    CHECK(inform->sender == "a2");
    CHECK(inform->tick == cfg.deadline_ticks + 4);

    auto report = check_trace(trace, contract_net_protocol());
    CHECK(report.conformant());
    REQUIRE(report.conversations.size() == 1);
    CHECK(report.conversations[0].final_state == "done");
}

TEST_CASE("contract net: everyone refusing ends in failure to env") {
    ContractNetConfig cfg;
    cfg.participants = {{"a1", 0.0, 0, 9}, {"a2", 0.0, 0, 9}};
    cfg.deadline_ticks = 4;
    cfg.seed = 3;

    auto trace = run_contract_net(cfg);
    CHECK(count_events(trace, "propose") == 0);
    CHECK(count_events(trace, "refuse") == 2);
    CHECK(count_events(trace, "accept") == 0);
    const auto* failure = find_event(trace, "failure");
    REQUIRE(failure);
    CHECK(failure->receiver == "env");

    auto report = check_trace(trace, contract_net_protocol());
    CHECK(report.conformant());
    CHECK(report.conversations[0].final_state == "no_award");
}

TEST_CASE("contract net: a single certain proposer is awarded") {
    ContractNetConfig cfg;
    cfg.participants = {{"solo", 1.0, 4, 4}};
    cfg.deadline_ticks = 5;
    cfg.seed = on_time_seed(cfg);

    auto trace = run_contract_net(cfg);
    const auto* accept = find_event(trace, "accept");
    REQUIRE(accept);
    CHECK(accept->receiver == "solo");
    CHECK(check_trace(trace, contract_net_protocol()).conformant());
}

TEST_CASE("contract net: traces are deterministic in the seed") {
    ContractNetConfig cfg;
    cfg.participants = {{"a1", 0.5, 0, 9}, {"a2", 0.5, 0, 9}, {"a3", 0.5, 0, 9}};
    cfg.deadline_ticks = 6;
    cfg.seed = 42;
    CHECK(run_contract_net(cfg).to_jsonl() == run_contract_net(cfg).to_jsonl());
}

TEST_CASE("contract net: config validation") {
    ContractNetConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), SimError);  // no participants
    cfg.participants = {{"a1", 1.5, 0, 9}};
    CHECK_THROWS_AS(cfg.validate(), SimError);  // probability out of range
    cfg.participants = {{"a1", 0.5, 9, 0}};
    CHECK_THROWS_AS(cfg.validate(), SimError);  // inverted bids
    cfg.participants = {{"a1", 0.5, 0, 9}, {"a1", 0.5, 0, 9}};
    CHECK_THROWS_AS(cfg.validate(), SimError);  // duplicate id

    CHECK_THROWS_AS(ContractNetConfig::from_json(nlohmann::json::object()), SimError);
}

TEST_CASE("protocol checking flags bad and truncated traces") {
    // accept with no preceding cfp
    Trace bad;
    bad.events.push_back({0, "c", "accept", "boss", "a1", nullptr, ""});
    auto report = check_trace(bad, contract_net_protocol());
    CHECK_FALSE(report.conformant());
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].event_index == 0);

    // a truncated but violation-free trace is still non-conformant
    ContractNetConfig cfg;
    cfg.participants = {{"a1", 1.0, 2, 6}};
    cfg.deadline_ticks = 4;
    cfg.seed = 1;
    auto trace = run_contract_net(cfg);
    trace.events.pop_back();
    auto truncated = check_trace(trace, contract_net_protocol());
    CHECK(truncated.violations.empty());
    CHECK_FALSE(truncated.conformant());
}

TEST_CASE("planning: slack auction with smallest-id tie break") {
    PlanningConfig cfg;
    cfg.machines = {{"m1", {{0, 10}}}, {"m2", {{0, 10}}}};
    cfg.jobs = {{"j1", 2, 10}};
    auto [schedule, trace] = run_distributed_planning(cfg);
    REQUIRE(schedule.entries.size() == 1);
    CHECK(schedule.entries[0].assigned);
    CHECK(schedule.entries[0].machine == "m1");
    CHECK(schedule.entries[0].start == 0);
    CHECK(schedule.entries[0].end == 2);
    CHECK(check_trace(trace, planning_protocol()).conformant());
}

TEST_CASE("planning: an infeasible job fails and later jobs still run") {
    PlanningConfig cfg;
    cfg.machines = {{"m1", {{0, 3}}}};
    cfg.jobs = {{"big", 5, 20}, {"small", 2, 20}};
    auto [schedule, trace] = run_distributed_planning(cfg);
    REQUIRE(schedule.entries.size() == 2);
    CHECK_FALSE(schedule.entries[0].assigned);
    CHECK(schedule.entries[1].assigned);
    const auto* failure = find_event(trace, "failure");
    REQUIRE(failure);
    CHECK(failure->conversation == "job-big");

    auto report = check_trace(trace, planning_protocol());
    CHECK(report.conformant());
    CHECK(report.conversations[0].final_state == "unassigned");
    CHECK(report.conversations[1].final_state == "done");
}

TEST_CASE("planning: awarded slots are consumed before the next auction") {
    PlanningConfig cfg;
    cfg.machines = {{"m1", {{0, 8}}}};
    cfg.jobs = {{"j1", 4, 8}, {"j2", 4, 8}, {"j3", 4, 8}};
    auto [schedule, trace] = run_distributed_planning(cfg);
    REQUIRE(schedule.entries.size() == 3);
    CHECK(schedule.entries[0].start == 0);
    CHECK(schedule.entries[0].end == 4);
    CHECK(schedule.entries[1].start == 4);
    CHECK(schedule.entries[1].end == 8);
    CHECK_FALSE(schedule.entries[2].assigned);  // capacity exhausted
    CHECK(check_trace(trace, planning_protocol()).conformant());
}

TEST_CASE("planning: deadlines bound completion, not start") {
    PlanningConfig cfg;
    cfg.machines = {{"m1", {{0, 100}}}};
    cfg.jobs = {{"tight", 5, 4}};
    auto [schedule, trace] = run_distributed_planning(cfg);
    CHECK_FALSE(schedule.entries[0].assigned);
}

TEST_CASE("planning: config validation") {
    PlanningConfig cfg;
    CHECK_THROWS_AS(cfg.validate(), SimError);  // no machines
    cfg.machines = {{"m1", {{5, 5}}}};
    CHECK_THROWS_AS(cfg.validate(), SimError);  // empty slot
    cfg.machines = {{"m1", {{0, 5}, {3, 8}}}};
    CHECK_THROWS_AS(cfg.validate(), SimError);  // overlapping slots
    cfg.machines = {{"m1", {{0, 5}}}};
    cfg.jobs = {{"j1", 0, 5}};
    CHECK_THROWS_AS(cfg.validate(), SimError);  // zero duration
}

TEST_CASE("federated: sufficient statistics integrate exactly") {
    PartialStats a{2, 3, 5};
    PartialStats b{3, 12, 50};
    auto ab = integrate_partials({a, b});
    CHECK(ab.count == 5);
    CHECK(ab.sum == 15.0);
    CHECK(ab.sum_sq == 55.0);
    auto ba = integrate_partials({b, a});
    CHECK(ba.count == ab.count);
    CHECK(ba.sum == ab.sum);
    CHECK(ba.sum_sq == ab.sum_sq);
}

TEST_CASE("federated: global mean and variance match the pooled data") {
    FederatedConfig cfg;
    cfg.partitions = {{1, 2, 3}, {4, 5}};
    auto [global, trace] = run_federated_learning(cfg);
    CHECK(global.stats.count == 5);
    CHECK(global.mean == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(global.variance == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(count_events(trace, "request") == 2);
    CHECK(count_events(trace, "reply") == 2);
    CHECK(check_trace(trace, federated_protocol()).conformant());
}

TEST_CASE("federated: one partition reduces to plain statistics") {
    FederatedConfig cfg;
    cfg.partitions = {{2.5, 2.5, 4.0}};
    auto [global, trace] = run_federated_learning(cfg);
    auto direct = partial_stats_of({2.5, 2.5, 4.0});
    CHECK(global.stats.count == direct.count);
    CHECK(global.stats.sum == direct.sum);
    CHECK(global.stats.sum_sq == direct.sum_sq);
    CHECK(global.mean == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("federated: degenerate inputs are errors") {
    FederatedConfig none;
    CHECK_THROWS_AS(none.validate(), SimError);

    FederatedConfig empties;
    empties.partitions = {{}, {}};
    CHECK_THROWS_AS(run_federated_learning(empties), SimError);
}

TEST_CASE("bdi: a cold room is sensed, classified, planned for, and heated") {
    BdiConfig cfg;
    cfg.environment = {{"temp", 5.0}};
    cfg.belief_rules = {{"temp", "<", 10.0, "cold"}};
    cfg.desire_rules = {{{"cold"}, "warm_up"}};
    cfg.plans = {{"warm_up", {"heat"}}};
    cfg.action_effects = {{"heat", "temp", 10.0}};
    cfg.actors = {{"a", false, {}}};
    cfg.ticks = 2;

    auto trace = run_bdi(cfg);
    CHECK(check_bdi_ordering(trace).empty());

    // tick 0: full sense -> classify -> predict -> plan -> act chain
    const auto* sense = find_event(trace, "sense");
    REQUIRE(sense);
    CHECK(sense->tick == 0);
    CHECK(sense->payload.at("value") == 5.0);
    const auto* act = find_event(trace, "act");
    REQUIRE(act);
    CHECK(act->tick == 0);
    CHECK(act->payload.at("action") == "heat");

    // the action's effect is visible at the next tick's sensing
    bool saw_warm = false;
    for (const auto& e : trace.events)
        if (e.performative == "sense" && e.tick == 1) {
            CHECK(e.payload.at("value") == 15.0);
            saw_warm = true;
        }
    CHECK(saw_warm);
    // no new classification once the room is warm
    for (const auto& e : trace.events)
        if (e.performative == "classify") CHECK(e.tick == 0);
}

TEST_CASE("bdi: no rules means sensing only") {
    BdiConfig cfg;
    cfg.environment = {{"x", 1.0}};
    cfg.actors = {{"a", false, {}}, {"b", false, {}}};
    cfg.ticks = 3;
    auto trace = run_bdi(cfg);
    CHECK(static_cast<int>(trace.events.size()) == count_events(trace, "sense"));
    CHECK(count_events(trace, "sense") == 6);
    CHECK(check_bdi_ordering(trace).empty());
}

TEST_CASE("bdi: spoken beliefs arrive one tick later") {
    BdiConfig cfg;
    cfg.environment = {{"alarm", 1.0}, {"noop", 0.0}};
    cfg.belief_rules = {{"alarm", ">", 0.5, "danger"}};
    cfg.desire_rules = {{{"danger"}, "flee"}};
    cfg.plans = {{"flee", {"run"}}};
    cfg.actors = {{"watcher", true, {"alarm"}}, {"sleeper", false, {"noop"}}};
    cfg.ticks = 2;

    auto trace = run_bdi(cfg);
    CHECK(check_bdi_ordering(trace).empty());

    const auto* speak = find_event(trace, "speak");
    REQUIRE(speak);
    CHECK(speak->tick == 0);
    CHECK(speak->sender == "watcher");
    CHECK(speak->receiver == "sleeper");
    CHECK(speak->payload.at("belief") == "danger");

    // the sleeper never senses the alarm, yet flees from tick 1 on
    for (const auto& e : trace.events) {
        if (e.sender != "sleeper") continue;
        CHECK(e.performative != "classify");
        if (e.performative == "act") {
            CHECK(e.tick == 1);
            CHECK(e.payload.at("action") == "run");
        }
    }
    bool sleeper_acted = false;
    for (const auto& e : trace.events)
        if (e.sender == "sleeper" && e.performative == "act") sleeper_acted = true;
    CHECK(sleeper_acted);
}

TEST_CASE("bdi: config validation") {
    BdiConfig cfg;
    cfg.environment = {{"x", 0.0}};
    cfg.actors = {{"a", false, {}}};
    cfg.ticks = 0;
    CHECK_THROWS_AS(cfg.validate(), SimError);
    cfg.ticks = 1;
    cfg.belief_rules = {{"missing", "<", 0.0, "b"}};
    CHECK_THROWS_AS(cfg.validate(), SimError);
    cfg.belief_rules = {{"x", "<>", 0.0, "b"}};
    CHECK_THROWS_AS(cfg.validate(), SimError);
    cfg.belief_rules = {{"x", "<", 0.0, "b"}};
    cfg.desire_rules = {{{"unknown"}, "g"}};
    CHECK_THROWS_AS(cfg.validate(), SimError);
    cfg.desire_rules = {{{"b"}, "g"}};
    cfg.plans = {{"other", {"act1"}}};
    CHECK_THROWS_AS(cfg.validate(), SimError);
    cfg.plans = {{"g", {"act1"}}};
    cfg.action_effects = {{"act1", "x", 1.0}};
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("check_bdi_ordering catches phase inversions") {
    Trace trace;
    trace.events.push_back({0, "bdi-a", "act", "a", "env", {{"action", "x"}}, ""});
    trace.events.push_back({0, "bdi-a", "sense", "a", "env", {{"sensor", "s"}}, ""});
    auto violations = check_bdi_ordering(trace);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("'sense' after a later phase") != std::string::npos);
}

TEST_CASE("traces serialize to one JSON object per line") {
    ContractNetConfig cfg;
    cfg.participants = {{"a1", 1.0, 2, 2}};
    cfg.deadline_ticks = 3;
    cfg.seed = 7;
    auto trace = run_contract_net(cfg);
    auto jsonl = trace.to_jsonl();
    REQUIRE(!jsonl.empty());
    CHECK(jsonl.back() == '\n');
    std::istringstream in(jsonl);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        CHECK(j.contains("tick"));
        CHECK(j.contains("performative"));
        CHECK(j.contains("sender"));
        CHECK(j.contains("receiver"));
        ++lines;
    }
    CHECK(lines == trace.events.size());
}
