#pragma once
// Simulation traces: ordered event records with logical ticks,
// serialized as JSON Lines.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace boxology::sim {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EventRecord {
    long tick = 0;
    std::string conversation;
    std::string performative;  // cfp, propose, refuse, accept, reject,
                               // inform_result, failure, request, reply,
                               // sense, classify, predict, plan, act, speak
    std::string sender;
    std::string receiver;  // actor id or "env"
    nlohmann::json payload;
    std::string diagram_ref;  // empty = unbound
};

struct Trace {
    std::vector<EventRecord> events;
    std::uint64_t seed = 0;
    nlohmann::json config_echo;

    std::string to_jsonl() const;
};

// Deterministic seeded randomness with a fixed cross-platform mapping
// from raw engine output to ranges (std distributions are not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    long uniform_int(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

}  // namespace boxology::sim
