#pragma once
// The diagram graph: typed nodes, typed edges, zoom/pattern frames.
// Documents are immutable after build(); build() checks referential
// integrity and reports every problem, not just the first.

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "boxology/taxonomy.hpp"

namespace boxology {

struct SourceSpan {
    int line = 0;  // 1-based; 0 means "no span"
    int column = 0;
    int length = 0;
    bool valid() const { return line > 0; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
    std::string code;  // stable token, e.g. "E004"
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
    std::string element;  // id of the offending element, for sorting
};

// sorted by (severity, code, element id)
void sort_diagnostics(std::vector<Diagnostic>& diags);
bool has_errors(const std::vector<Diagnostic>& diags);

enum class EdgeKind { Flow, Role, Influence, Message };
enum class RoleKind { Initiates, Supports };
enum class FrameKind { Zoom, Pattern };

std::string_view to_string(EdgeKind k);
std::string_view to_string(RoleKind r);

struct Node {
    std::string id;
    NodeKind kind;
    std::string label;  // label path as written, e.g. "infer:induce"
    std::string display_name;  // empty = none
    SourceSpan span;
};

struct Edge {
    std::string from;
    std::string to;
    EdgeKind kind = EdgeKind::Flow;
    RoleKind role = RoleKind::Initiates;  // meaningful for kind == Role
    std::string label;  // symbol label path; required for kind == Message
    SourceSpan span;
};

struct Frame {
    std::string id;
    FrameKind kind = FrameKind::Zoom;
    std::string badge;         // Zoom: the zoomed node's id
    std::string pattern_name;  // Pattern frames
    std::vector<std::string> members;  // node ids
    SourceSpan span;
};

struct Document {
    std::string name;
    std::vector<Node> nodes;    // sorted by id after build()
    std::vector<Edge> edges;    // sorted by (from,to,kind,role,label)
    std::vector<Frame> frames;  // sorted by id

    const Node* find_node(std::string_view id) const;
    const Frame* find_frame(std::string_view id) const;
};

bool operator==(const Node& a, const Node& b);
bool operator==(const Edge& a, const Edge& b);
bool operator==(const Frame& a, const Frame& b);
bool operator==(const Document& a, const Document& b);

struct BuildResult {
    std::optional<Document> doc;  // set iff errors empty
    std::vector<Diagnostic> errors;
    bool ok() const { return doc.has_value(); }
};

// Integrity codes: E009 duplicate id, E010 dangling reference,
// E006 dangling zoom badge, E008 partially overlapping frames.
BuildResult build(std::string name, std::vector<Node> nodes, std::vector<Edge> edges,
                  std::vector<Frame> frames);

// Member closure of a frame (nested frames included, zoom badge excluded).
// Throws std::out_of_range for an unknown frame id.
std::set<std::string> frame_contents(const Document& doc, std::string_view frame_id);

std::string to_canonical_json(const Document& doc);

struct FromJsonResult {
    std::optional<Document> doc;
    std::vector<Diagnostic> errors;  // J001 malformed json, plus build/concept errors
    bool ok() const { return doc.has_value(); }
};

FromJsonResult from_json(const std::string& text);

}  // namespace boxology
