#pragma once
// Built-in concept hierarchy for the boxology language.
//
// Four roots (instance, model, process, actor), closed vocabulary,
// flat name namespace. Labels like "infer:deduce" resolve through
// resolve_path(); subsumption is the reflexive-transitive parent walk.

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace boxology {

enum class NodeKind { Instance, Model, Process, Actor };

std::string_view to_string(NodeKind k);

struct ResolveError {
    enum class Kind { UnknownConcept, NotADescendant };
    Kind kind;
    std::string segment;  // the offending label segment
};

class Taxonomy {
public:
    struct Concept {
        std::string name;
        int parent;  // index into concepts(), -1 for roots
        NodeKind kind;
        int depth;  // 0 for roots
    };

    using ResolveResult = std::variant<const Concept*, ResolveError>;

    // The fixed hierarchy. Immutable singleton, safe to share.
    static const Taxonomy& builtin();

    const std::vector<Concept>& concepts() const { return concepts_; }

    // nullptr when the name is not in the taxonomy
    const Concept* find(std::string_view name) const;

    // Colon-separated label, each segment a strict descendant of the
    // previous one. Returns the concept named by the last segment.
    ResolveResult resolve_path(std::string_view label) const;

    // true iff a == b or b is an ancestor of a
    bool is_subconcept(const Concept& a, const Concept& b) const;
    bool is_subconcept(std::string_view a, std::string_view b) const;

    NodeKind kind_of(const Concept& c) const { return c.kind; }

    // "infer:deduce" style: <child-of-root ancestor>:<name>, or just the
    // name for roots and their direct children
    std::string canonical_label(const Concept& c) const;

    const Concept& parent_of(const Concept& c) const { return concepts_[static_cast<size_t>(c.parent)]; }

private:
    Taxonomy() = default;
    int add(std::string name, int parent, NodeKind kind);

    std::vector<Concept> concepts_;
};

}  // namespace boxology
