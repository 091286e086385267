#include "boxology/renderer.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace boxology {

namespace {

std::string_view shape_for(NodeKind k) {
    switch (k) {
        case NodeKind::Instance: return "box";
        case NodeKind::Model: return "hexagon";
        case NodeKind::Process: return "ellipse";
        case NodeKind::Actor: return "triangle";
    }
    return "box";
}

std::string node_label(const Node& n) {
    return n.display_name.empty() ? n.label : n.display_name;
}

bool nested_in(const Frame& outer, const Frame& inner) {
    std::set<std::string> members(outer.members.begin(), outer.members.end());
    if (!inner.badge.empty() && members.count(inner.badge)) return true;
    return !inner.members.empty() &&
           std::all_of(inner.members.begin(), inner.members.end(),
                       [&](const std::string& m) { return members.count(m) > 0; });
}

struct Emitter {
    const Document& doc;
    const RenderOptions& opts;
    std::ostringstream os;
    std::vector<int> parent;  // frame index -> parent frame index, -1 top

    bool frame_shown(const Frame& f) const {
        return f.kind == FrameKind::Zoom ? opts.show_zoom_frames : opts.show_pattern_frames;
    }

    void compute_parents() {
        parent.assign(doc.frames.size(), -1);
        for (size_t i = 0; i < doc.frames.size(); ++i) {
            int best = -1;
            size_t best_size = 0;
            for (size_t j = 0; j < doc.frames.size(); ++j) {
                if (i == j || !nested_in(doc.frames[j], doc.frames[i])) continue;
                size_t size = doc.frames[j].members.size();
                if (best < 0 || size < best_size) {
                    best = static_cast<int>(j);
                    best_size = size;
                }
            }
            parent[i] = best;
        }
    }

    void emit_frame(size_t idx, const std::string& indent) {
        const Frame& f = doc.frames[idx];
        std::string inner_indent = indent;
        if (frame_shown(f)) {
            os << indent << "subgraph \"cluster_" << f.id << "\" {\n";
            inner_indent += "  ";
            if (f.kind == FrameKind::Zoom) {
                const Node* badge = doc.find_node(f.badge);
                std::string label =
                    badge && !badge->display_name.empty() ? badge->display_name : f.badge;
                os << inner_indent << "label=\"" << label << "\";\n";
                os << inner_indent << "style=filled, fillcolor=lightgrey;\n";
                os << inner_indent << "\"" << f.badge
                   << "\" [shape=triangle, width=0.4, height=0.4, label=\"" << label << "\"];\n";
            } else {
                os << inner_indent << "label=\"" << f.pattern_name << "\";\n";
                os << inner_indent << "style=\"dashed,filled\", fillcolor=grey;\n";
            }
            // bare references pull members into the cluster; skip ids owned
            // by a nested frame so they land in the inner cluster instead
            std::set<std::string> claimed;
            for (size_t j = 0; j < doc.frames.size(); ++j) {
                if (parent[j] != static_cast<int>(idx)) continue;
                const Frame& g = doc.frames[j];
                if (!g.badge.empty() && frame_shown(g)) claimed.insert(g.badge);
                claimed.insert(g.members.begin(), g.members.end());
            }
            for (const auto& m : f.members) {
                if (!claimed.count(m)) os << inner_indent << "\"" << m << "\";\n";
            }
        }
        for (size_t j = 0; j < doc.frames.size(); ++j) {
            if (parent[j] == static_cast<int>(idx)) emit_frame(j, inner_indent);
        }
        if (frame_shown(f)) os << indent << "}\n";
    }

    std::string run() {
        compute_parents();
        os << "digraph \"" << doc.name << "\" {\n";
        os << "  rankdir=" << (opts.rankdir == RenderOptions::RankDir::LR ? "LR" : "TB") << ";\n";

        for (size_t i = 0; i < doc.frames.size(); ++i) {
            if (parent[i] < 0) emit_frame(i, "  ");
        }

        // zoom badges already got their statement inside the cluster
        std::set<std::string> badges;
        if (opts.show_zoom_frames) {
            for (const auto& f : doc.frames) {
                if (f.kind == FrameKind::Zoom) badges.insert(f.badge);
            }
        }
        for (const auto& n : doc.nodes) {
            if (badges.count(n.id)) continue;
            os << "  \"" << n.id << "\" [shape=" << shape_for(n.kind) << ", label=\""
               << node_label(n) << "\"];\n";
        }
        for (const auto& e : doc.edges) {
            os << "  \"" << e.from << "\" -> \"" << e.to << "\"";
            switch (e.kind) {
                case EdgeKind::Flow:
                    if (!e.label.empty()) os << " [label=\"" << e.label << "\"]";
                    break;
                case EdgeKind::Influence: os << " [style=dotted]"; break;
                case EdgeKind::Message:
                    os << " [label=\"" << e.label << "\", style=bold]";
                    break;
                case EdgeKind::Role:
                    os << " [label=\"" << to_string(e.role) << "\"]";
                    break;
            }
            os << ";\n";
        }
        os << "}\n";
        return os.str();
    }
};

}  // namespace

std::string to_dot(const Document& doc, const RenderOptions& opts) {
    Emitter emitter{doc, opts, {}, {}};
    return emitter.run();
}

}  // namespace boxology
