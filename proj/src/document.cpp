#include "boxology/document.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace boxology {

std::string_view to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Flow: return "flow";
        case EdgeKind::Role: return "role";
        case EdgeKind::Influence: return "influence";
        case EdgeKind::Message: return "message";
    }
    return "?";
}

std::string_view to_string(RoleKind r) {
    return r == RoleKind::Initiates ? "initiates" : "supports";
}

void sort_diagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.severity, a.code, a.element) < std::tie(b.severity, b.code, b.element);
    });
}

bool has_errors(const std::vector<Diagnostic>& diags) {
    return std::any_of(diags.begin(), diags.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

const Node* Document::find_node(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

const Frame* Document::find_frame(std::string_view id) const {
    for (const auto& f : frames)
        if (f.id == id) return &f;
    return nullptr;
}

bool operator==(const Node& a, const Node& b) {
    return std::tie(a.id, a.kind, a.label, a.display_name) ==
           std::tie(b.id, b.kind, b.label, b.display_name);
}

bool operator==(const Edge& a, const Edge& b) {
    return std::tie(a.from, a.to, a.kind, a.role, a.label) ==
           std::tie(b.from, b.to, b.kind, b.role, b.label);
}

bool operator==(const Frame& a, const Frame& b) {
    return std::tie(a.id, a.kind, a.badge, a.pattern_name, a.members) ==
           std::tie(b.id, b.kind, b.badge, b.pattern_name, b.members);
}

bool operator==(const Document& a, const Document& b) {
    return a.name == b.name && a.nodes == b.nodes && a.edges == b.edges && a.frames == b.frames;
}

namespace {

auto edge_key(const Edge& e) {
    return std::make_tuple(e.from, e.to, static_cast<int>(e.kind), static_cast<int>(e.role),
                           e.label);
}

void canonicalize(Document& doc) {
    std::sort(doc.nodes.begin(), doc.nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    std::sort(doc.edges.begin(), doc.edges.end(),
              [](const Edge& a, const Edge& b) { return edge_key(a) < edge_key(b); });
    std::sort(doc.frames.begin(), doc.frames.end(),
              [](const Frame& a, const Frame& b) { return a.id < b.id; });
    for (auto& f : doc.frames) std::sort(f.members.begin(), f.members.end());
}

std::set<std::string> contents_impl(const Document& doc, const Frame& frame,
                                    std::set<std::string>& visited) {
    std::set<std::string> out;
    if (!visited.insert(frame.id).second) return out;
    for (const auto& m : frame.members) out.insert(m);
    for (const auto& g : doc.frames) {
        if (g.id == frame.id) continue;
        bool nested = (!g.badge.empty() && out.count(g.badge) > 0) ||
                      (!g.members.empty() &&
                       std::all_of(g.members.begin(), g.members.end(),
                                   [&](const std::string& m) { return out.count(m) > 0; }));
        if (nested) {
            auto inner = contents_impl(doc, g, visited);
            out.insert(inner.begin(), inner.end());
        }
    }
    if (!frame.badge.empty()) out.erase(frame.badge);
    return out;
}

}  // namespace

std::set<std::string> frame_contents(const Document& doc, std::string_view frame_id) {
    const Frame* f = doc.find_frame(frame_id);
    if (!f) throw std::out_of_range("unknown frame: " + std::string(frame_id));
    std::set<std::string> visited;
    return contents_impl(doc, *f, visited);
}

BuildResult build(std::string name, std::vector<Node> nodes, std::vector<Edge> edges,
                  std::vector<Frame> frames) {
    std::vector<Diagnostic> errors;
    auto err = [&](std::string code, std::string msg, const SourceSpan& span, std::string element) {
        errors.push_back({std::move(code), Severity::Error, std::move(msg), span, std::move(element)});
    };

    std::set<std::string> node_ids;
    for (const auto& n : nodes) {
        if (!node_ids.insert(n.id).second)
            err("E009", "duplicate id '" + n.id + "'", n.span, n.id);
    }
    std::set<std::string> frame_ids;
    for (const auto& f : frames) {
        if (node_ids.count(f.id) || !frame_ids.insert(f.id).second)
            err("E009", "duplicate id '" + f.id + "'", f.span, f.id);
    }

    for (const auto& e : edges) {
        for (const auto* endpoint : {&e.from, &e.to}) {
            if (!node_ids.count(*endpoint))
                err("E010", "edge references unknown node '" + *endpoint + "'", e.span, *endpoint);
        }
    }
    for (const auto& f : frames) {
        if (f.kind == FrameKind::Zoom && !node_ids.count(f.badge))
            err("E006", "zoom frame badge '" + f.badge + "' is not a node", f.span, f.id);
        for (const auto& m : f.members) {
            if (!node_ids.count(m))
                err("E010", "frame '" + f.id + "' references unknown node '" + m + "'", f.span, m);
        }
    }

    Document doc{std::move(name), std::move(nodes), std::move(edges), std::move(frames)};
    canonicalize(doc);

    if (errors.empty()) {
        // frames must be pairwise disjoint or nested
        for (size_t i = 0; i < doc.frames.size(); ++i) {
            for (size_t j = i + 1; j < doc.frames.size(); ++j) {
                auto ci = frame_contents(doc, doc.frames[i].id);
                auto cj = frame_contents(doc, doc.frames[j].id);
                std::set<std::string> inter;
                std::set_intersection(ci.begin(), ci.end(), cj.begin(), cj.end(),
                                      std::inserter(inter, inter.end()));
                bool ok = inter.empty() || inter == ci || inter == cj;
                if (!ok)
                    err("E008",
                        "frames '" + doc.frames[i].id + "' and '" + doc.frames[j].id +
                            "' partially overlap",
                        doc.frames[j].span, doc.frames[j].id);
            }
        }
    }

    if (!errors.empty()) {
        sort_diagnostics(errors);
        return {std::nullopt, std::move(errors)};
    }
    return {std::move(doc), {}};
}

std::string to_canonical_json(const Document& doc) {
    using json = nlohmann::ordered_json;
    json out;
    out["name"] = doc.name;
    out["nodes"] = json::array();
    for (const auto& n : doc.nodes) {
        json jn;
        jn["id"] = n.id;
        jn["kind"] = to_string(n.kind);
        jn["concept"] = n.label;
        if (!n.display_name.empty()) jn["display_name"] = n.display_name;
        out["nodes"].push_back(std::move(jn));
    }
    out["edges"] = json::array();
    for (const auto& e : doc.edges) {
        json je;
        je["from"] = e.from;
        je["to"] = e.to;
        je["kind"] = to_string(e.kind);
        if (e.kind == EdgeKind::Role) je["role"] = to_string(e.role);
        if (!e.label.empty()) je["label"] = e.label;
        out["edges"].push_back(std::move(je));
    }
    out["frames"] = json::array();
    for (const auto& f : doc.frames) {
        json jf;
        jf["id"] = f.id;
        jf["kind"] = f.kind == FrameKind::Zoom ? "zoom" : "pattern";
        if (f.kind == FrameKind::Zoom) jf["badge"] = f.badge;
        if (f.kind == FrameKind::Pattern) jf["pattern_name"] = f.pattern_name;
        jf["members"] = f.members;
        out["frames"].push_back(std::move(jf));
    }
    return out.dump(2) + "\n";
}

FromJsonResult from_json(const std::string& text) {
    using json = nlohmann::json;
    std::vector<Diagnostic> errors;
    auto malformed = [&](const std::string& what) {
        errors.push_back({"J001", Severity::Error, "malformed json: " + what, {}, ""});
        return FromJsonResult{std::nullopt, std::move(errors)};
    };

    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) return malformed("parse error");
    if (!j.is_object() || !j.contains("name") || !j.contains("nodes") || !j.contains("edges") ||
        !j.contains("frames"))
        return malformed("missing required fields");

    const auto& tax = Taxonomy::builtin();
    auto check_label = [&](const std::string& label, const std::string& element) {
        auto res = tax.resolve_path(label);
        if (auto* e = std::get_if<ResolveError>(&res)) {
            std::string code = e->kind == ResolveError::Kind::UnknownConcept ? "E001" : "E003";
            errors.push_back({code, Severity::Error,
                              "bad concept path '" + label + "' at segment '" + e->segment + "'",
                              {},
                              element});
        }
    };

    try {
        std::vector<Node> nodes;
        for (const auto& jn : j.at("nodes")) {
            Node n;
            n.id = jn.at("id").get<std::string>();
            std::string kind = jn.at("kind").get<std::string>();
            if (kind == "instance")
                n.kind = NodeKind::Instance;
            else if (kind == "model")
                n.kind = NodeKind::Model;
            else if (kind == "process")
                n.kind = NodeKind::Process;
            else if (kind == "actor")
                n.kind = NodeKind::Actor;
            else
                return malformed("bad node kind '" + kind + "'");
            n.label = jn.at("concept").get<std::string>();
            check_label(n.label, n.id);
            if (jn.contains("display_name")) n.display_name = jn.at("display_name").get<std::string>();
            nodes.push_back(std::move(n));
        }
        std::vector<Edge> edges;
        for (const auto& je : j.at("edges")) {
            Edge e;
            e.from = je.at("from").get<std::string>();
            e.to = je.at("to").get<std::string>();
            std::string kind = je.at("kind").get<std::string>();
            if (kind == "flow")
                e.kind = EdgeKind::Flow;
            else if (kind == "role")
                e.kind = EdgeKind::Role;
            else if (kind == "influence")
                e.kind = EdgeKind::Influence;
            else if (kind == "message")
                e.kind = EdgeKind::Message;
            else
                return malformed("bad edge kind '" + kind + "'");
            if (e.kind == EdgeKind::Role) {
                std::string role = je.at("role").get<std::string>();
                if (role == "initiates")
                    e.role = RoleKind::Initiates;
                else if (role == "supports")
                    e.role = RoleKind::Supports;
                else
                    return malformed("bad role '" + role + "'");
            }
            if (je.contains("label")) {
                e.label = je.at("label").get<std::string>();
                check_label(e.label, e.from + "->" + e.to);
            }
            edges.push_back(std::move(e));
        }
        std::vector<Frame> frames;
        for (const auto& jf : j.at("frames")) {
            Frame f;
            f.id = jf.at("id").get<std::string>();
            std::string kind = jf.at("kind").get<std::string>();
            if (kind == "zoom") {
                f.kind = FrameKind::Zoom;
                f.badge = jf.at("badge").get<std::string>();
            } else if (kind == "pattern") {
                f.kind = FrameKind::Pattern;
                f.pattern_name = jf.at("pattern_name").get<std::string>();
            } else {
                return malformed("bad frame kind '" + kind + "'");
            }
            for (const auto& m : jf.at("members")) f.members.push_back(m.get<std::string>());
            frames.push_back(std::move(f));
        }

        if (!errors.empty()) {
            sort_diagnostics(errors);
            return {std::nullopt, std::move(errors)};
        }
        auto built = build(j.at("name").get<std::string>(), std::move(nodes), std::move(edges),
                           std::move(frames));
        if (!built.ok()) return {std::nullopt, std::move(built.errors)};
        return {std::move(built.doc), {}};
    } catch (const json::exception& ex) {
        return malformed(ex.what());
    }
}

}  // namespace boxology
