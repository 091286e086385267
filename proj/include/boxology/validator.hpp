#pragma once
// Semantic checks against the taxonomy and the notation's legality rules.
//
// Code table:
//   E001 unknown concept path            E002 node kind != concept root
//   E003 label segment not a descendant  E004 illegal edge for its kinds
//   E005 message label not a symbol      E006 zoom badge missing/dangling
//   E007 non-team actor zoom holds actors E008 frames partially overlap
//   E009 duplicate id (build)            E010 dangling reference (build)
//   W001 isolated node                   W002 pattern frame matches nothing
//   P001..P003 parser, J001 malformed json

#include <vector>

#include "boxology/document.hpp"

namespace boxology {

struct LegalityTable {
    struct Entry {
        NodeKind from;
        EdgeKind kind;
        NodeKind to;
    };
    std::vector<Entry> allowed;

    static const LegalityTable& builtin();
    bool edge_legal(NodeKind from, EdgeKind kind, NodeKind to) const;
};

// All findings, sorted by (severity, code, element id); empty = well-formed.
std::vector<Diagnostic> validate(const Document& doc, const Taxonomy& tax);

std::string diagnostic_to_text(const Diagnostic& d, const std::string& file);
std::string diagnostic_to_json(const Diagnostic& d, const std::string& file);

}  // namespace boxology
