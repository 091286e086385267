#pragma once
// Shared test machinery: corpus loading, a random document generator for
// round-trip and matcher tests, and the brute-force pattern oracle.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxology/parser.hpp"
#include "boxology/patterns.hpp"
#include "boxology/sim/trace.hpp"
#include "boxology/validator.hpp"

namespace testsupport {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string corpus_path(const std::string& name) {
    const char* dir = std::getenv("BOX_CORPUS_DIR");
    return std::string(dir ? dir : "corpus") + "/" + name;
}

inline std::string golden_path(const std::string& name) {
    const char* dir = std::getenv("BOX_GOLDEN_DIR");
    return std::string(dir ? dir : "tests/golden") + "/" + name;
}

inline boxology::Document load_corpus(const std::string& name) {
    auto parsed = boxology::parse(read_file(corpus_path(name)));
    if (!parsed.ok()) throw std::runtime_error("corpus " + name + " failed to parse");
    return *parsed.doc;
}

inline const std::vector<std::string>& corpus_files() {
    static const std::vector<std::string> files{
        "fig2_ml_pipeline.bxl", "fig3_mobile_learning.bxl", "fig4_distributed_planning.bxl",
        "fig5_bdi.bxl", "fig6_contractnet.bxl"};
    return files;
}

// --- random documents ---

// Edge-legal by construction; optionally includes frames that follow the
// parser's id conventions so parse/format round trips exactly.
inline boxology::Document random_document(boxology::sim::Rng& rng, int max_nodes = 8,
                                          bool with_frames = true) {
    using namespace boxology;
    const auto& tax = Taxonomy::builtin();

    std::vector<const Taxonomy::Concept*> by_kind[4];
    for (const auto& c : tax.concepts())
        by_kind[static_cast<int>(c.kind)].push_back(&c);

    int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_nodes)));
    std::vector<Node> nodes;
    for (int i = 0; i < n; ++i) {
        NodeKind kind = static_cast<NodeKind>(rng.below(4));
        const auto* c = by_kind[static_cast<int>(kind)][rng.below(by_kind[static_cast<int>(kind)].size())];
        Node node;
        node.id = "n" + std::to_string(i);
        node.kind = kind;
        node.label = tax.canonical_label(*c);
        if (rng.below(4) == 0) node.display_name = "Node " + std::to_string(i);
        nodes.push_back(std::move(node));
    }

    const auto& table = LegalityTable::builtin();
    std::vector<const Taxonomy::Concept*> symbols;
    for (const auto& c : tax.concepts())
        if (tax.is_subconcept(c, *tax.find("symbol"))) symbols.push_back(&c);

    std::vector<Edge> edges;
    int tries = n * 3;
    for (int t = 0; t < tries; ++t) {
        const Node& a = nodes[rng.below(nodes.size())];
        const Node& b = nodes[rng.below(nodes.size())];
        EdgeKind kind = static_cast<EdgeKind>(rng.below(4));
        if (!table.edge_legal(a.kind, kind, b.kind)) continue;
        Edge e;
        e.from = a.id;
        e.to = b.id;
        e.kind = kind;
        if (kind == EdgeKind::Role)
            e.role = rng.below(2) ? RoleKind::Supports : RoleKind::Initiates;
        if (kind == EdgeKind::Message)
            e.label = tax.canonical_label(*symbols[rng.below(symbols.size())]);
        bool dup = std::any_of(edges.begin(), edges.end(), [&](const Edge& x) { return x == e; });
        if (!dup) edges.push_back(std::move(e));
    }

    std::vector<Frame> frames;
    if (with_frames && n >= 3 && rng.below(2) == 0) {
        Frame f;
        f.kind = FrameKind::Pattern;
        f.id = "pattern_0";
        f.pattern_name = "p" + std::to_string(rng.below(100));
        for (int i = 0; i < n / 2; ++i) f.members.push_back(nodes[static_cast<size_t>(i)].id);
        frames.push_back(std::move(f));
    }

    auto built = build("doc" + std::to_string(rng.below(1000)), std::move(nodes),
                       std::move(edges), std::move(frames));
    if (!built.ok()) throw std::runtime_error("random_document produced an invalid document");
    return *built.doc;
}

// --- brute-force matcher oracle ---

// Exhaustive enumeration of injective slot assignments, checking every
// constraint directly. Independent of the production matcher.
inline std::vector<boxology::Match> oracle_detect(const boxology::Document& doc,
                                                  const boxology::PatternTemplate& pattern,
                                                  const boxology::Taxonomy& tax) {
    using namespace boxology;
    std::vector<Match> out;
    size_t k = pattern.slots.size();
    if (doc.nodes.size() < k) return out;

    std::vector<size_t> choice(k, 0);
    auto resolve = [&](const std::string& label) -> const Taxonomy::Concept* {
        auto res = tax.resolve_path(label);
        const auto* const* c = std::get_if<const Taxonomy::Concept*>(&res);
        return c ? *c : nullptr;
    };

    // odometer over all node tuples, injectivity checked afterwards
    while (true) {
        bool injective = true;
        for (size_t i = 0; i < k && injective; ++i)
            for (size_t j = i + 1; j < k; ++j)
                if (choice[i] == choice[j]) {
                    injective = false;
                    break;
                }
        if (injective) {
            bool ok = true;
            for (size_t i = 0; i < k && ok; ++i) {
                const auto& slot = pattern.slots[i];
                const Node& node = doc.nodes[choice[i]];
                const auto* c = resolve(node.label);
                const auto* want = tax.find(slot.label);
                ok = node.kind == slot.kind && c && want && tax.is_subconcept(*c, *want);
            }
            for (const auto& te : pattern.edges) {
                if (!ok) break;
                size_t fi = 0, ti = 0;
                for (size_t i = 0; i < k; ++i) {
                    if (pattern.slots[i].id == te.from) fi = i;
                    if (pattern.slots[i].id == te.to) ti = i;
                }
                const std::string& from = doc.nodes[choice[fi]].id;
                const std::string& to = doc.nodes[choice[ti]].id;
                bool found = false;
                for (const auto& e : doc.edges) {
                    if (e.from != from || e.to != to || e.kind != te.kind) continue;
                    if (te.kind == boxology::EdgeKind::Role && e.role != te.role) continue;
                    if (!te.label.empty()) {
                        const auto* c = resolve(e.label);
                        const auto* want = tax.find(te.label);
                        if (!c || !want || !tax.is_subconcept(*c, *want)) continue;
                    }
                    found = true;
                    break;
                }
                ok = found;
            }
            if (ok) {
                Match m;
                m.pattern = pattern.name;
                for (size_t i = 0; i < k; ++i)
                    m.binding[pattern.slots[i].id] = doc.nodes[choice[i]].id;
                out.push_back(std::move(m));
            }
        }
        // advance odometer
        size_t pos = 0;
        while (pos < k) {
            if (++choice[pos] < doc.nodes.size()) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }

    auto key = [&](const Match& m) {
        std::vector<std::string> ids;
        for (const auto& slot : pattern.slots) ids.push_back(m.binding.at(slot.id));
        return ids;
    };
    std::sort(out.begin(), out.end(),
              [&](const Match& a, const Match& b) { return key(a) < key(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace testsupport
