#pragma once
// Built-in design-pattern templates, instantiation into document
// fragments, and subsumption-aware subgraph detection.

#include <map>
#include <string>
#include <vector>

#include "boxology/document.hpp"

namespace boxology {

struct PatternTemplate {
    struct Slot {
        std::string id;
        NodeKind kind;
        std::string label;  // constraint; doc concept must be a subconcept
    };
    struct TemplateEdge {
        std::string from;  // slot ids
        std::string to;
        EdgeKind kind = EdgeKind::Flow;
        RoleKind role = RoleKind::Initiates;
        std::string label;  // constraint for message edges (subsumption)
    };

    std::string name;
    std::string doc;  // one-line description
    std::vector<Slot> slots;
    std::vector<TemplateEdge> edges;

    const Slot* find_slot(std::string_view id) const;
};

struct Match {
    std::string pattern;
    std::map<std::string, std::string> binding;  // slot id -> node id, injective
};

bool operator==(const Match& a, const Match& b);

// The seven templates, stable order, each validator-clean.
const std::vector<PatternTemplate>& builtin_patterns();

const PatternTemplate* find_pattern(std::string_view name);

// Fresh fragment with nodes named <prefix>_<slot>. Throws
// std::invalid_argument for a prefix that is not a legal identifier stem.
Document instantiate(const PatternTemplate& pattern, const std::string& prefix);

// All injective bindings, deduplicated, sorted lexicographically by the
// bound node ids. Non-induced matching; frames are ignored.
std::vector<Match> detect(const Document& doc, const PatternTemplate& pattern,
                          const Taxonomy& tax);

std::string match_to_json(const Match& m);

}  // namespace boxology
