#include "boxology/validator.hpp"

#include <algorithm>
#include <sstream>

#include "boxology/patterns.hpp"
#include "json.hpp"

namespace boxology {

const LegalityTable& LegalityTable::builtin() {
    using enum NodeKind;
    static const LegalityTable table{{
        {Instance, EdgeKind::Flow, Process},
        {Model, EdgeKind::Flow, Process},
        {Process, EdgeKind::Flow, Instance},
        {Process, EdgeKind::Flow, Model},
        {Actor, EdgeKind::Role, Process},
        {Process, EdgeKind::Influence, Model},
        {Actor, EdgeKind::Message, Actor},
    }};
    return table;
}

bool LegalityTable::edge_legal(NodeKind from, EdgeKind kind, NodeKind to) const {
    return std::any_of(allowed.begin(), allowed.end(), [&](const Entry& e) {
        return e.from == from && e.kind == kind && e.to == to;
    });
}

namespace {

std::string kind_word(NodeKind k) { return std::string(to_string(k)); }

// E001/E003 if the path is bad; returns the concept otherwise
const Taxonomy::Concept* check_path(const Taxonomy& tax, const std::string& label,
                                    const std::string& element, const SourceSpan& span,
                                    std::vector<Diagnostic>& out) {
    auto res = tax.resolve_path(label);
    if (auto* err = std::get_if<ResolveError>(&res)) {
        if (err->kind == ResolveError::Kind::UnknownConcept)
            out.push_back({"E001", Severity::Error,
                           "unknown concept '" + err->segment + "' in label '" + label + "'", span,
                           element});
        else
            out.push_back({"E003", Severity::Error,
                           "segment '" + err->segment + "' is not a descendant of its predecessor in '" +
                               label + "'",
                           span, element});
        return nullptr;
    }
    return std::get<const Taxonomy::Concept*>(res);
}

}  // namespace

std::vector<Diagnostic> validate(const Document& doc, const Taxonomy& tax) {
    std::vector<Diagnostic> out;
    const auto& table = LegalityTable::builtin();

    for (const auto& n : doc.nodes) {
        const auto* c = check_path(tax, n.label, n.id, n.span, out);
        if (c && tax.kind_of(*c) != n.kind) {
            out.push_back({"E002", Severity::Error,
                           "node '" + n.id + "' declared " + kind_word(n.kind) + " but concept '" +
                               n.label + "' is a " + kind_word(tax.kind_of(*c)) + " concept",
                           n.span, n.id});
        }
    }

    for (const auto& e : doc.edges) {
        std::string element = e.from + "->" + e.to;
        const Node* from = doc.find_node(e.from);
        const Node* to = doc.find_node(e.to);
        if (!from || !to) continue;  // build() already rejected
        if (!table.edge_legal(from->kind, e.kind, to->kind)) {
            out.push_back({"E004", Severity::Error,
                           std::string(to_string(e.kind)) + " edge " + kind_word(from->kind) +
                               " -> " + kind_word(to->kind) + " is not in the legality table",
                           e.span, element});
        }
        if (!e.label.empty()) {
            const auto* c = check_path(tax, e.label, element, e.span, out);
            if (c && e.kind == EdgeKind::Message) {
                const auto* symbol = tax.find("symbol");
                if (!tax.is_subconcept(*c, *symbol)) {
                    out.push_back({"E005", Severity::Error,
                                   "message label '" + e.label + "' is not a symbol concept",
                                   e.span, element});
                }
            }
        }
    }

    for (const auto& f : doc.frames) {
        if (f.kind != FrameKind::Zoom) continue;
        const Node* badge = doc.find_node(f.badge);
        if (!badge) {
            out.push_back({"E006", Severity::Error,
                           "zoom frame badge '" + f.badge + "' is not a node", f.span, f.id});
            continue;
        }
        if (badge->kind != NodeKind::Actor) continue;
        auto res = tax.resolve_path(badge->label);
        const auto* const* slot = std::get_if<const Taxonomy::Concept*>(&res);
        const auto* c = slot ? *slot : nullptr;
        const auto* team = tax.find("team");
        bool is_team = c && tax.is_subconcept(*c, *team);
        if (is_team) continue;
        for (const auto& m : frame_contents(doc, f.id)) {
            const Node* member = doc.find_node(m);
            if (member && member->kind == NodeKind::Actor) {
                out.push_back({"E007", Severity::Error,
                               "zoom frame '" + f.id + "' of non-team actor '" + f.badge +
                                   "' contains actor '" + m + "'",
                               f.span, f.id});
                break;
            }
        }
    }

    // partial overlap (normally caught at build; rechecked for documents
    // assembled by hand)
    for (size_t i = 0; i < doc.frames.size(); ++i) {
        for (size_t j = i + 1; j < doc.frames.size(); ++j) {
            auto ci = frame_contents(doc, doc.frames[i].id);
            auto cj = frame_contents(doc, doc.frames[j].id);
            std::set<std::string> inter;
            std::set_intersection(ci.begin(), ci.end(), cj.begin(), cj.end(),
                                  std::inserter(inter, inter.end()));
            if (!(inter.empty() || inter == ci || inter == cj)) {
                out.push_back({"E008", Severity::Error,
                               "frames '" + doc.frames[i].id + "' and '" + doc.frames[j].id +
                                   "' partially overlap",
                               doc.frames[j].span, doc.frames[j].id});
            }
        }
    }

    for (const auto& n : doc.nodes) {
        bool incident = std::any_of(doc.edges.begin(), doc.edges.end(), [&](const Edge& e) {
            return e.from == n.id || e.to == n.id;
        });
        bool badge = std::any_of(doc.frames.begin(), doc.frames.end(),
                                 [&](const Frame& f) { return f.badge == n.id; });
        if (!incident && !badge) {
            out.push_back({"W001", Severity::Warning, "node '" + n.id + "' is isolated", n.span,
                           n.id});
        }
    }

    if (!has_errors(out)) {
        for (const auto& f : doc.frames) {
            if (f.kind != FrameKind::Pattern) continue;
            std::set<std::string> members(f.members.begin(), f.members.end());
            bool covered = false;
            for (const auto& tmpl : builtin_patterns()) {
                for (const auto& match : detect(doc, tmpl, tax)) {
                    std::set<std::string> bound;
                    for (const auto& [slot, node] : match.binding) bound.insert(node);
                    if (bound == members) {
                        covered = true;
                        break;
                    }
                }
                if (covered) break;
            }
            if (!covered) {
                out.push_back({"W002", Severity::Warning,
                               "pattern frame '" + f.id + "' (\"" + f.pattern_name +
                                   "\") does not match any built-in pattern",
                               f.span, f.id});
            }
        }
    }

    sort_diagnostics(out);
    return out;
}

std::string diagnostic_to_text(const Diagnostic& d, const std::string& file) {
    std::ostringstream os;
    os << file << ":" << d.span.line << ":" << d.span.column << ": "
       << (d.severity == Severity::Error ? "error" : "warning") << "[" << d.code
       << "]: " << d.message;
    return os.str();
}

std::string diagnostic_to_json(const Diagnostic& d, const std::string& file) {
    nlohmann::ordered_json j;
    j["code"] = d.code;
    j["severity"] = d.severity == Severity::Error ? "error" : "warning";
    j["message"] = d.message;
    j["file"] = file;
    j["line"] = d.span.line;
    j["column"] = d.span.column;
    return j.dump();
}

}  // namespace boxology
