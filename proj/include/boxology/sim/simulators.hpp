#pragma once
// The four interaction-pattern simulations: ContractNet negotiation,
// distributed planning auctions, federated sufficient-statistics
// learning, and the BDI sense/classify/predict/plan/act loop.
// All are deterministic functions of (config, seed).

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boxology/sim/trace.hpp"

namespace boxology::sim {

// --- ContractNet (one conversation per run) ---

struct ContractNetConfig {
    struct Participant {
        std::string id;
        double propose_probability = 1.0;
        long bid_lo = 0;
        long bid_hi = 10;
    };
    std::string initiator = "initiator";
    std::vector<Participant> participants;
    long deadline_ticks = 5;
    std::uint64_t seed = 0;

    static ContractNetConfig from_json(const nlohmann::json& j);  // throws SimError
    void validate() const;                                        // throws SimError
};

Trace run_contract_net(const ContractNetConfig& cfg);

// --- Distributed planning ---

struct PlanningConfig {
    struct Machine {
        std::string id;
        std::vector<std::pair<long, long>> free;  // disjoint [start, end) slots
    };
    struct Job {
        std::string id;
        long duration = 1;
        long deadline = 0;
    };
    std::string job_agent = "jobagent";
    std::string pool_agent = "pool";
    std::vector<Machine> machines;
    std::vector<Job> jobs;
    std::uint64_t seed = 0;

    static PlanningConfig from_json(const nlohmann::json& j);
    void validate() const;
};

struct Schedule {
    struct Entry {
        std::string job;
        bool assigned = false;
        std::string machine;
        long start = 0;
        long end = 0;
    };
    std::vector<Entry> entries;  // one per job, config order
};

std::pair<Schedule, Trace> run_distributed_planning(const PlanningConfig& cfg);

// --- Federated learning via sufficient statistics ---

struct PartialStats {
    long long count = 0;
    double sum = 0;
    double sum_sq = 0;
};

PartialStats partial_stats_of(const std::vector<double>& data);
PartialStats integrate_partials(const std::vector<PartialStats>& parts);

struct GlobalStats {
    PartialStats stats;
    double mean = 0;
    double variance = 0;  // population variance
};

struct FederatedConfig {
    std::string requester = "requester";
    std::vector<std::vector<double>> partitions;
    std::uint64_t seed = 0;

    static FederatedConfig from_json(const nlohmann::json& j);
    void validate() const;  // EmptyTeam
};

// throws SimError("all partitions empty") when the total count is zero
std::pair<GlobalStats, Trace> run_federated_learning(const FederatedConfig& cfg);

// --- BDI loop ---

struct BdiConfig {
    struct EnvUpdate {
        std::string sensor;
        double delta = 0;
    };
    struct BeliefRule {
        std::string sensor;
        std::string comparator;  // < <= > >= == !=
        double threshold = 0;
        std::string belief;
    };
    struct DesireRule {
        std::vector<std::string> beliefs;
        std::string goal;
    };
    struct Plan {
        std::string goal;
        std::vector<std::string> actions;
    };
    struct ActionEffect {
        std::string action;
        std::string sensor;
        double delta = 0;
    };
    struct Actor {
        std::string id;
        bool share_beliefs = false;
        std::vector<std::string> sensors;  // empty = all sensors
    };

    std::map<std::string, double> environment;
    std::vector<EnvUpdate> env_updates;
    std::vector<BeliefRule> belief_rules;
    std::vector<DesireRule> desire_rules;
    std::vector<Plan> plans;
    std::vector<ActionEffect> action_effects;
    std::vector<Actor> actors;
    long ticks = 1;
    std::uint64_t seed = 0;

    static BdiConfig from_json(const nlohmann::json& j);
    void validate() const;
};

Trace run_bdi(const BdiConfig& cfg);

// BDI traces are not a negotiation, so instead of an FSM the check is the
// per-(actor, tick) phase ordering sense < classify < speak < predict <
// plan < act. Returns human-readable violations, empty when clean.
std::vector<std::string> check_bdi_ordering(const Trace& trace);

}  // namespace boxology::sim
