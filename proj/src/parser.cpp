#include "boxology/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace boxology {

namespace {

enum class Tok {
    Ident,
    String,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Colon,
    Comma,
    ArrowFlow,       // ->
    ArrowInfluence,  // ~>
    ArrowMessage,    // =>
    ArrowInitiates,  // -initiates->
    ArrowSupports,   // -supports->
    End,
    Bad,
};

struct Token {
    Tok type;
    std::string text;
    SourceSpan span;
};

std::vector<Token> lex(const std::string& src, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Tok t, std::string text, int l, int c) {
        out.push_back({t, std::move(text), {l, c, static_cast<int>(out.empty() ? 0 : 0)}});
        out.back().span.length = static_cast<int>(out.back().text.size());
    };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (ch == '\r' || ch == ' ' || ch == '\t') {
            ++col;
            ++i;
            continue;
        }
        if (ch == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') ++i;
            continue;
        }
        int l = line, c = col;
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            push(Tok::Ident, src.substr(i, j - i), l, c);
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (ch == '"') {
            size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
            if (j >= src.size() || src[j] != '"') {
                diags.push_back({"P001", Severity::Error, "unterminated string literal",
                                 {l, c, 1}, ""});
                push(Tok::Bad, "\"", l, c);
                i = j;
                continue;
            }
            push(Tok::String, src.substr(i + 1, j - i - 1), l, c);
            out.back().span.length = static_cast<int>(j - i + 1);
            col += static_cast<int>(j - i + 1);
            i = j + 1;
            continue;
        }
        auto starts = [&](const char* s) { return src.compare(i, std::strlen(s), s) == 0; };
        struct Fixed {
            const char* text;
            Tok type;
        };
        static const Fixed fixed[] = {
            {"-initiates->", Tok::ArrowInitiates}, {"-supports->", Tok::ArrowSupports},
            {"->", Tok::ArrowFlow},                {"~>", Tok::ArrowInfluence},
            {"=>", Tok::ArrowMessage},             {"{", Tok::LBrace},
            {"}", Tok::RBrace},                    {"[", Tok::LBracket},
            {"]", Tok::RBracket},                  {":", Tok::Colon},
            {",", Tok::Comma},
        };
        bool matched = false;
        for (const auto& f : fixed) {
            if (starts(f.text)) {
                push(f.type, f.text, l, c);
                size_t n = std::strlen(f.text);
                col += static_cast<int>(n);
                i += n;
                matched = true;
                break;
            }
        }
        if (matched) continue;
        push(Tok::Bad, std::string(1, ch), l, c);
        ++col;
        ++i;
    }
    out.push_back({Tok::End, "", {line, col, 0}});
    return out;
}

bool is_node_keyword(const std::string& s) {
    return s == "instance" || s == "model" || s == "process" || s == "actor";
}

bool is_item_start(const Token& t) {
    if (t.type != Tok::Ident) return false;
    return is_node_keyword(t.text) || t.text == "team" || t.text == "zoom" || t.text == "pattern";
}

class Parser {
public:
    explicit Parser(const std::string& src) : toks_(lex(src, diags_)) {}

    ParseResult run() {
        parse_document();
        if (has_errors(diags_)) {
            sort_diagnostics(diags_);
            return {std::nullopt, std::move(diags_)};
        }
        auto built = build(std::move(name_), std::move(nodes_), std::move(edges_),
                           std::move(frames_));
        if (!built.ok()) {
            for (auto& d : built.errors) diags_.push_back(d);
            sort_diagnostics(diags_);
            return {std::nullopt, std::move(diags_)};
        }
        return {std::move(built.doc), std::move(diags_)};
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& advance() { return toks_[pos_++]; }
    bool at(Tok t) const { return cur().type == t; }

    void error(std::string code, std::string msg) {
        diags_.push_back({std::move(code), Severity::Error, std::move(msg), cur().span, ""});
    }

    bool expect_ident(const char* what, std::string& out) {
        if (!at(Tok::Ident)) {
            error("P001", std::string("expected ") + what + ", got '" + cur().text + "'");
            return false;
        }
        out = advance().text;
        return true;
    }

    // skip to the next plausible item start (error recovery)
    void synchronize(int brace_depth_limit) {
        int depth = 0;
        while (!at(Tok::End)) {
            if (depth == 0 && (is_item_start(cur()) || at(Tok::RBrace))) return;
            if (at(Tok::LBrace)) ++depth;
            if (at(Tok::RBrace)) {
                if (depth == 0) return;
                --depth;
                if (depth < brace_depth_limit) {
                    advance();
                    return;
                }
            }
            advance();
        }
    }

    std::string parse_label_path(bool& ok) {
        std::string path;
        ok = expect_ident("concept name", path);
        if (!ok) return path;
        while (at(Tok::Colon)) {
            advance();
            std::string seg;
            if (!expect_ident("concept name", seg)) {
                ok = false;
                return path;
            }
            path += ":" + seg;
        }
        return path;
    }

    void parse_node_decl(std::vector<std::string>* member_sink) {
        std::string kw = advance().text;
        NodeKind kind = kw == "instance" ? NodeKind::Instance
                        : kw == "model"  ? NodeKind::Model
                        : kw == "process" ? NodeKind::Process
                                          : NodeKind::Actor;
        Node n;
        n.kind = kind;
        if (!at(Tok::Ident)) {
            error("P001", "expected node identifier after '" + kw + "'");
            synchronize(0);
            return;
        }
        n.span = cur().span;
        n.id = advance().text;
        if (!at(Tok::Colon)) {
            error("P001", "expected ':' after node identifier");
            synchronize(0);
            return;
        }
        advance();
        bool ok = true;
        n.label = parse_label_path(ok);
        if (!ok) {
            synchronize(0);
            return;
        }
        if (at(Tok::Ident) && cur().text == "as") {
            advance();
            if (!at(Tok::String)) {
                error("P001", "expected string after 'as'");
                synchronize(0);
                return;
            }
            n.display_name = advance().text;
        }
        if (member_sink) member_sink->push_back(n.id);
        nodes_.push_back(std::move(n));
    }

    void parse_team_decl(std::vector<std::string>* member_sink) {
        SourceSpan span = advance().span;  // "team"
        std::string id;
        if (!expect_ident("team identifier", id)) {
            synchronize(0);
            return;
        }
        if (!at(Tok::LBrace)) {
            error("P001", "expected '{' after team identifier");
            synchronize(0);
            return;
        }
        advance();
        Node actor;
        actor.id = id;
        actor.kind = NodeKind::Actor;
        actor.label = "team";
        actor.span = span;
        nodes_.push_back(std::move(actor));
        if (member_sink) member_sink->push_back(id);

        Frame frame;
        frame.id = "zoom_" + id;
        frame.kind = FrameKind::Zoom;
        frame.badge = id;
        frame.span = span;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            if (at(Tok::Ident) && is_node_keyword(cur().text)) {
                parse_node_decl(&frame.members);
            } else if (at(Tok::Ident) && cur().text == "team") {
                parse_team_decl(&frame.members);
            } else {
                error("P001", "expected node or team declaration in team block, got '" +
                                  cur().text + "'");
                synchronize(1);
            }
        }
        if (at(Tok::End)) {
            diags_.push_back({"P002", Severity::Error, "unterminated team block", span, id});
        } else {
            advance();  // }
        }
        frames_.push_back(std::move(frame));
    }

    void parse_edge_decl() {
        std::string from = advance().text;
        SourceSpan arrow_span = cur().span;
        Edge e;
        e.from = from;
        switch (cur().type) {
            case Tok::ArrowFlow: e.kind = EdgeKind::Flow; break;
            case Tok::ArrowInfluence: e.kind = EdgeKind::Influence; break;
            case Tok::ArrowMessage: e.kind = EdgeKind::Message; break;
            case Tok::ArrowInitiates:
                e.kind = EdgeKind::Role;
                e.role = RoleKind::Initiates;
                break;
            case Tok::ArrowSupports:
                e.kind = EdgeKind::Role;
                e.role = RoleKind::Supports;
                break;
            default:
                error("P001", "expected arrow after '" + from + "'");
                synchronize(0);
                return;
        }
        advance();
        e.span = arrow_span;
        if (!expect_ident("target identifier", e.to)) {
            synchronize(0);
            return;
        }
        if (at(Tok::LBracket)) {
            advance();
            bool ok = true;
            e.label = parse_label_path(ok);
            if (!ok || !at(Tok::RBracket)) {
                if (ok) error("P001", "expected ']' after edge label");
                synchronize(0);
                return;
            }
            advance();
        }
        if (e.kind == EdgeKind::Message && e.label.empty()) {
            diags_.push_back({"P003", Severity::Error,
                              "message arrow '=>' requires a [symbol] label", arrow_span,
                              e.from + "->" + e.to});
            return;
        }
        edges_.push_back(std::move(e));
    }

    void parse_member_list(Frame& frame) {
        if (at(Tok::RBrace)) return;  // empty frame
        while (true) {
            std::string m;
            if (!expect_ident("member identifier", m)) {
                synchronize(1);
                return;
            }
            frame.members.push_back(std::move(m));
            if (!at(Tok::Comma)) return;
            advance();
        }
    }

    void parse_frame_decl() {
        SourceSpan span = cur().span;
        std::string kw = advance().text;
        Frame frame;
        frame.span = span;
        if (kw == "zoom") {
            frame.kind = FrameKind::Zoom;
            if (!expect_ident("badge identifier", frame.badge)) {
                synchronize(0);
                return;
            }
            frame.id = "zoom_" + frame.badge;
        } else {
            frame.kind = FrameKind::Pattern;
            if (!at(Tok::String)) {
                error("P001", "expected pattern name string after 'pattern'");
                synchronize(0);
                return;
            }
            frame.pattern_name = advance().text;
            frame.id = "pattern_" + std::to_string(pattern_count_++);
        }
        if (!at(Tok::LBrace)) {
            error("P001", "expected '{' in frame declaration");
            synchronize(0);
            return;
        }
        advance();
        parse_member_list(frame);
        if (!at(Tok::RBrace)) {
            diags_.push_back({"P002", Severity::Error, "unterminated frame block", span, frame.id});
            synchronize(0);
        } else {
            advance();
        }
        frames_.push_back(std::move(frame));
    }

    void parse_item() {
        if (at(Tok::Ident) && is_node_keyword(cur().text)) {
            parse_node_decl(nullptr);
        } else if (at(Tok::Ident) && cur().text == "team") {
            parse_team_decl(nullptr);
        } else if (at(Tok::Ident) && (cur().text == "zoom" || cur().text == "pattern")) {
            parse_frame_decl();
        } else if (at(Tok::Ident) && toks_[pos_ + 1].type >= Tok::ArrowFlow &&
                   toks_[pos_ + 1].type <= Tok::ArrowSupports) {
            parse_edge_decl();
        } else {
            error("P001", "unexpected token '" + cur().text + "'");
            advance();
            synchronize(0);
        }
    }

    void parse_document() {
        if (!(at(Tok::Ident) && cur().text == "diagram")) {
            error("P001", "expected 'diagram' at start of file");
            return;
        }
        advance();
        if (!at(Tok::String)) {
            error("P001", "expected diagram name string");
            return;
        }
        name_ = advance().text;
        if (!at(Tok::LBrace)) {
            error("P001", "expected '{' after diagram name");
            return;
        }
        SourceSpan open = advance().span;
        while (!at(Tok::RBrace) && !at(Tok::End)) parse_item();
        if (at(Tok::End)) {
            diags_.push_back({"P002", Severity::Error, "unterminated diagram block", open, name_});
        } else {
            advance();
            if (!at(Tok::End)) error("P001", "trailing content after diagram block");
        }
    }

    std::vector<Diagnostic> diags_;
    std::vector<Token> toks_;
    size_t pos_ = 0;
    int pattern_count_ = 0;
    std::string name_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<Frame> frames_;
};

bool is_team_frame(const Document& doc, const Frame& f) {
    if (f.kind != FrameKind::Zoom) return false;
    const Node* badge = doc.find_node(f.badge);
    if (!badge || badge->kind != NodeKind::Actor) return false;
    auto pos = badge->label.rfind(':');
    std::string_view last =
        pos == std::string::npos ? std::string_view(badge->label)
                                 : std::string_view(badge->label).substr(pos + 1);
    return last == "team";
}

void emit_node(std::ostream& os, const Node& n, int indent) {
    os << std::string(static_cast<size_t>(indent), ' ');
    switch (n.kind) {
        case NodeKind::Instance: os << "instance"; break;
        case NodeKind::Model: os << "model"; break;
        case NodeKind::Process: os << "process"; break;
        case NodeKind::Actor: os << "actor"; break;
    }
    os << " " << n.id << " : " << n.label;
    if (!n.display_name.empty()) os << " as \"" << n.display_name << "\"";
    os << "\n";
}

void emit_team(std::ostream& os, const Document& doc, const Frame& team, int indent);

// one node section entry: either a plain declaration or a whole team block
void emit_entry(std::ostream& os, const Document& doc, const std::string& id, int indent) {
    for (const auto& f : doc.frames) {
        if (f.badge == id && is_team_frame(doc, f)) {
            emit_team(os, doc, f, indent);
            return;
        }
    }
    emit_node(os, *doc.find_node(id), indent);
}

void emit_team(std::ostream& os, const Document& doc, const Frame& team, int indent) {
    os << std::string(static_cast<size_t>(indent), ' ') << "team " << team.badge << " {\n";
    std::vector<std::string> members = team.members;
    std::sort(members.begin(), members.end());
    for (const auto& m : members) emit_entry(os, doc, m, indent + 2);
    os << std::string(static_cast<size_t>(indent), ' ') << "}\n";
}

}  // namespace

ParseResult parse(const std::string& text) { return Parser(text).run(); }

std::string format(const Document& doc) {
    std::ostringstream os;
    os << "diagram \"" << doc.name << "\" {\n";

    // ids consumed by team blocks are not re-declared at top level
    std::set<std::string> in_team;
    for (const auto& f : doc.frames) {
        if (!is_team_frame(doc, f))
            continue;
        for (const auto& m : f.members) in_team.insert(m);
    }
    for (const auto& n : doc.nodes) {
        if (!in_team.count(n.id)) emit_entry(os, doc, n.id, 2);
    }

    for (const auto& e : doc.edges) {
        os << "  " << e.from << " ";
        switch (e.kind) {
            case EdgeKind::Flow: os << "->"; break;
            case EdgeKind::Influence: os << "~>"; break;
            case EdgeKind::Message: os << "=>"; break;
            case EdgeKind::Role:
                os << (e.role == RoleKind::Initiates ? "-initiates->" : "-supports->");
                break;
        }
        os << " " << e.to;
        if (!e.label.empty()) os << " [" << e.label << "]";
        os << "\n";
    }

    for (const auto& f : doc.frames) {
        if (is_team_frame(doc, f)) continue;  // already emitted as sugar
        os << "  ";
        if (f.kind == FrameKind::Zoom)
            os << "zoom " << f.badge;
        else
            os << "pattern \"" << f.pattern_name << "\"";
        os << " {";
        for (size_t i = 0; i < f.members.size(); ++i) os << (i ? ", " : " ") << f.members[i];
        os << (f.members.empty() ? "}" : " }") << "\n";
    }

    os << "}\n";
    return os.str();
}

}  // namespace boxology
