#pragma once
// Deterministic Graphviz DOT emission: box/hexagon/ellipse/triangle
// shapes, grey frame clusters, dotted influence edges, bold labeled
// message edges.

#include <string>

#include "boxology/document.hpp"

namespace boxology {

struct RenderOptions {
    bool show_pattern_frames = true;
    bool show_zoom_frames = true;
    enum class RankDir { LR, TB } rankdir = RankDir::LR;
};

std::string to_dot(const Document& doc, const RenderOptions& opts = {});

}  // namespace boxology
