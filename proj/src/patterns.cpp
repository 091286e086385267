#include "boxology/patterns.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "json.hpp"

namespace boxology {

const PatternTemplate::Slot* PatternTemplate::find_slot(std::string_view id) const {
    for (const auto& s : slots)
        if (s.id == id) return &s;
    return nullptr;
}

bool operator==(const Match& a, const Match& b) {
    return a.pattern == b.pattern && a.binding == b.binding;
}

const std::vector<PatternTemplate>& builtin_patterns() {
    using enum NodeKind;
    using enum EdgeKind;
    static const std::vector<PatternTemplate> patterns = [] {
        auto flow = [](const char* from, const char* to) {
            return PatternTemplate::TemplateEdge{from, to, Flow, RoleKind::Initiates, ""};
        };
        auto msg = [](const char* from, const char* to, const char* label) {
            return PatternTemplate::TemplateEdge{from, to, Message, RoleKind::Initiates, label};
        };
        std::vector<PatternTemplate> v;

        v.push_back({"1a-train",
                     "data is used to train a statistical model",
                     {{"data", Instance, "data"},
                      {"gen", Process, "induce"},
                      {"model", Model, "statistical"}},
                     {flow("data", "gen"),
                      flow("gen", "model")}});

        v.push_back({"2a-apply",
                     "a trained model classifies new data into a symbol",
                     {{"data", Instance, "data"},
                      {"infer", Process, "deduce"},
                      {"model", Model, "statistical"},
                      {"out", Instance, "symbol"}},
                     {flow("data", "infer"),
                      flow("model", "infer"),
                      flow("infer", "out")}});

        v.push_back({"3a-pipeline",
                     "train-then-apply machine learning pipeline",
                     {{"traindata", Instance, "data"},
                      {"gen", Process, "induce"},
                      {"model", Model, "statistical"},
                      {"newdata", Instance, "data"},
                      {"infer", Process, "deduce"},
                      {"out", Instance, "symbol"}},
                     {flow("traindata", "gen"),
                      flow("gen", "model"),
                      flow("newdata", "infer"),
                      flow("model", "infer"),
                      flow("infer", "out")}});

        v.push_back({"federated-learning",
                     "a requester asks a team to learn partial models for integration",
                     {{"requester", Actor, "actor"},
                      {"workers", Actor, "team"},
                      {"learn", Process, "induce"},
                      {"partial", Model, "partial"},
                      {"integrate", Process, "process"},
                      {"global", Model, "statistical"}},
                     {msg("requester", "workers", "request"),
                      msg("workers", "requester", "reply"),
                      flow("learn", "partial"),
                      flow("partial", "integrate"),
                      flow("integrate", "global")}});

        v.push_back({"bdi-loop",
                     "sense, classify beliefs, predict desires, plan intentions, act",
                     {{"sense", Process, "sense"},
                      {"data", Instance, "data"},
                      {"classify", Process, "classify"},
                      {"belief", Instance, "symbol"},
                      {"world", Model, "world"},
                      {"predict", Process, "predict"},
                      {"goal", Model, "goal"},
                      {"plan", Process, "plan"},
                      {"intentions", Model, "plans"},
                      {"act", Process, "act"}},
                     {flow("sense", "data"),
                      flow("data", "classify"),
                      flow("classify", "belief"),
                      flow("classify", "world"),
                      flow("world", "predict"),
                      flow("predict", "goal"),
                      flow("goal", "plan"),
                      flow("plan", "intentions"),
                      flow("intentions", "act")}});

        v.push_back({"contract-net",
                     "CFP, proposals, single award, result delivery",
                     {{"initiator", Actor, "actor"},
                      {"contractors", Actor, "team"}},
                     {msg("initiator", "contractors", "cfp"),
                      msg("contractors", "initiator", "proposal"),
                      msg("initiator", "contractors", "assignment"),
                      msg("contractors", "initiator", "result")}});

        v.push_back({"distributed-planning",
                     "job, pool and machine agents auction work orders",
                     {{"job", Actor, "software"},
                      {"pool", Actor, "software"},
                      {"machines", Actor, "team"},
                      {"judge", Process, "deduce"},
                      {"capacity", Model, "capacity"}},
                     {msg("job", "pool", "workorder"),
                      msg("pool", "machines", "job"),
                      msg("machines", "job", "result"),
                      flow("capacity", "judge")}});

        return v;
    }();
    return patterns;
}

const PatternTemplate* find_pattern(std::string_view name) {
    for (const auto& p : builtin_patterns())
        if (p.name == name) return &p;
    return nullptr;
}

Document instantiate(const PatternTemplate& pattern, const std::string& prefix) {
    bool legal = !prefix.empty() && std::isalpha(static_cast<unsigned char>(prefix[0])) &&
                 std::all_of(prefix.begin(), prefix.end(), [](char ch) {
                     return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
                 });
    if (!legal) throw std::invalid_argument("bad prefix '" + prefix + "'");

    const auto& tax = Taxonomy::builtin();
    std::vector<Node> nodes;
    for (const auto& slot : pattern.slots) {
        const auto* c = tax.find(slot.label);
        nodes.push_back({prefix + "_" + slot.id, slot.kind, tax.canonical_label(*c), "", {}});
    }
    std::vector<Edge> edges;
    for (const auto& e : pattern.edges) {
        Edge edge;
        edge.from = prefix + "_" + e.from;
        edge.to = prefix + "_" + e.to;
        edge.kind = e.kind;
        edge.role = e.role;
        if (!e.label.empty()) edge.label = tax.canonical_label(*tax.find(e.label));
        edges.push_back(std::move(edge));
    }
    auto built = build(prefix, std::move(nodes), std::move(edges), {});
    return *built.doc;
}

namespace {

const Taxonomy::Concept* resolve_last(const Taxonomy& tax, const std::string& label) {
    auto res = tax.resolve_path(label);
    const auto* const* c = std::get_if<const Taxonomy::Concept*>(&res);
    return c ? *c : nullptr;
}

struct Matcher {
    const Document& doc;
    const PatternTemplate& pattern;
    const Taxonomy& tax;
    std::vector<const Taxonomy::Concept*> node_concepts;  // parallel to doc.nodes
    std::map<std::string, std::string> binding;
    std::vector<Match> out;

    bool edge_satisfied(const PatternTemplate::TemplateEdge& te) const {
        const std::string& from = binding.at(te.from);
        const std::string& to = binding.at(te.to);
        for (const auto& e : doc.edges) {
            if (e.from != from || e.to != to || e.kind != te.kind) continue;
            if (te.kind == EdgeKind::Role && e.role != te.role) continue;
            if (!te.label.empty()) {
                const auto* c = resolve_last(tax, e.label);
                const auto* want = tax.find(te.label);
                if (!c || !want || !tax.is_subconcept(*c, *want)) continue;
            }
            return true;
        }
        return false;
    }

    void extend(size_t slot_idx) {
        if (slot_idx == pattern.slots.size()) {
            out.push_back({pattern.name, binding});
            return;
        }
        const auto& slot = pattern.slots[slot_idx];
        const auto* want = tax.find(slot.label);
        for (size_t i = 0; i < doc.nodes.size(); ++i) {
            const Node& n = doc.nodes[i];
            if (n.kind != slot.kind) continue;
            if (!node_concepts[i] || !want || !tax.is_subconcept(*node_concepts[i], *want))
                continue;
            bool used = std::any_of(binding.begin(), binding.end(),
                                    [&](const auto& kv) { return kv.second == n.id; });
            if (used) continue;
            binding[slot.id] = n.id;
            bool feasible = true;
            for (const auto& te : pattern.edges) {
                if (binding.count(te.from) && binding.count(te.to) && !edge_satisfied(te)) {
                    feasible = false;
                    break;
                }
            }
            if (feasible) extend(slot_idx + 1);
            binding.erase(slot.id);
        }
    }
};

}  // namespace

std::vector<Match> detect(const Document& doc, const PatternTemplate& pattern,
                          const Taxonomy& tax) {
    Matcher m{doc, pattern, tax, {}, {}, {}};
    for (const auto& n : doc.nodes) m.node_concepts.push_back(resolve_last(tax, n.label));
    m.extend(0);

    auto key = [&](const Match& match) {
        std::vector<std::string> ids;
        for (const auto& slot : pattern.slots) ids.push_back(match.binding.at(slot.id));
        return ids;
    };
    std::sort(m.out.begin(), m.out.end(),
              [&](const Match& a, const Match& b) { return key(a) < key(b); });
    m.out.erase(std::unique(m.out.begin(), m.out.end()), m.out.end());
    return m.out;
}

std::string match_to_json(const Match& m) {
    nlohmann::ordered_json j;
    j["pattern"] = m.pattern;
    j["binding"] = nlohmann::ordered_json::object();
    for (const auto& [slot, node] : m.binding) j["binding"][slot] = node;
    return j.dump();
}

}  // namespace boxology
