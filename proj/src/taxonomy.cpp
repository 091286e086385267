#include "boxology/taxonomy.hpp"

#include <cassert>
#include <stdexcept>

namespace boxology {

std::string_view to_string(NodeKind k) {
    switch (k) {
        case NodeKind::Instance: return "instance";
        case NodeKind::Model: return "model";
        case NodeKind::Process: return "process";
        case NodeKind::Actor: return "actor";
    }
    return "?";
}

int Taxonomy::add(std::string name, int parent, NodeKind kind) {
    int depth = parent < 0 ? 0 : concepts_[static_cast<size_t>(parent)].depth + 1;
    assert(depth <= 6);
    assert(find(name) == nullptr && "flat namespace");
    concepts_.push_back(Concept{std::move(name), parent, kind, depth});
    return static_cast<int>(concepts_.size()) - 1;
}

const Taxonomy& Taxonomy::builtin() {
    static const Taxonomy tax = [] {
        Taxonomy t;
        using enum NodeKind;

        int instance = t.add("instance", -1, Instance);
        int data = t.add("data", instance, Instance);
        for (auto n : {"number", "text", "tensor", "stream"}) t.add(n, data, Instance);
        int symbol = t.add("symbol", instance, Instance);
        for (auto n : {"label", "relation", "trace", "request", "reply", "cfp", "proposal",
                       "assignment", "result", "workorder", "job"})
            t.add(n, symbol, Instance);

        int model = t.add("model", -1, Model);
        int statistical = t.add("statistical", model, Model);
        for (auto n : {"neuralnet", "bayesnet", "markov", "code", "capacity", "partial"})
            t.add(n, statistical, Model);
        int semantic = t.add("semantic", model, Model);
        // "plans" (the intention model) would clash with the deductive
        // process "plan" in the flat namespace, hence the plural.
        for (auto n : {"taxonomy", "ontology", "kgraph", "state", "context", "norm", "resource",
                       "world", "goal", "plans", "bom"})
            t.add(n, semantic, Model);

        int process = t.add("process", -1, Process);
        int transform = t.add("transform", process, Process);
        t.add("embed", transform, Process);
        int infer = t.add("infer", process, Process);
        int induce = t.add("induce", infer, Process);
        t.add("train", induce, Process);
        t.add("engineer", induce, Process);
        int deduce = t.add("deduce", infer, Process);
        for (auto n : {"classify", "predict", "plan", "reason"}) t.add(n, deduce, Process);
        int interact = t.add("interact", process, Process);
        for (auto n : {"sense", "act", "speak"}) t.add(n, interact, Process);

        int actor = t.add("actor", -1, Actor);
        t.add("human", actor, Actor);
        int agent = t.add("agent", actor, Actor);
        t.add("software", agent, Actor);
        t.add("robot", agent, Actor);
        t.add("team", actor, Actor);

        return t;
    }();
    return tax;
}

const Taxonomy::Concept* Taxonomy::find(std::string_view name) const {
    for (const auto& c : concepts_)
        if (c.name == name) return &c;
    return nullptr;
}

Taxonomy::ResolveResult Taxonomy::resolve_path(std::string_view label) const {
    const Concept* prev = nullptr;
    size_t pos = 0;
    while (true) {
        size_t colon = label.find(':', pos);
        std::string_view seg =
            colon == std::string_view::npos ? label.substr(pos) : label.substr(pos, colon - pos);
        const Concept* c = find(seg);
        if (!c) return ResolveError{ResolveError::Kind::UnknownConcept, std::string(seg)};
        if (prev) {
            if (c == prev || !is_subconcept(*c, *prev))
                return ResolveError{ResolveError::Kind::NotADescendant, std::string(seg)};
        }
        prev = c;
        if (colon == std::string_view::npos) break;
        pos = colon + 1;
    }
    return prev;
}

bool Taxonomy::is_subconcept(const Concept& a, const Concept& b) const {
    const Concept* cur = &a;
    for (int guard = 0; guard <= 6; ++guard) {
        if (cur == &b) return true;
        if (cur->parent < 0) return false;
        cur = &concepts_[static_cast<size_t>(cur->parent)];
    }
    return false;
}

bool Taxonomy::is_subconcept(std::string_view a, std::string_view b) const {
    const Concept* ca = find(a);
    const Concept* cb = find(b);
    if (!ca || !cb) throw std::invalid_argument("concept not in taxonomy");
    return is_subconcept(*ca, *cb);
}

std::string Taxonomy::canonical_label(const Concept& c) const {
    if (c.depth <= 1) return c.name;
    const Concept* main = &c;
    while (main->depth > 1) main = &parent_of(*main);
    return main->name + ":" + c.name;
}

}  // namespace boxology
