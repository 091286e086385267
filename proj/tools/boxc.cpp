// boxc — command-line front end for the boxology toolchain:
// check, fmt, render, detect, expand, sim.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "CLI11.hpp"
#include "boxology/parser.hpp"
#include "boxology/patterns.hpp"
#include "boxology/renderer.hpp"
#include "boxology/sim/protocol.hpp"
#include "boxology/sim/simulators.hpp"
#include "boxology/validator.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

bool use_color() {
    return std::getenv("BOXC_NO_COLOR") == nullptr && isatty(fileno(stdout));
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return out.good();
}

void print_diagnostics(const std::vector<boxology::Diagnostic>& diags, const std::string& file,
                       const std::string& fmt) {
    for (const auto& d : diags) {
        if (fmt == "json") {
            std::cout << boxology::diagnostic_to_json(d, file) << "\n";
        } else {
            std::string line = boxology::diagnostic_to_text(d, file);
            if (use_color()) {
                auto pos = line.find(d.severity == boxology::Severity::Error ? "error" : "warning");
                const char* color = d.severity == boxology::Severity::Error ? "\033[31m" : "\033[33m";
                if (pos != std::string::npos)
                    line = line.substr(0, pos) + color + line.substr(pos) + "\033[0m";
            }
            std::cout << line << "\n";
        }
    }
}

// parse + validate; returns nullopt after printing diagnostics
std::optional<boxology::Document> load_checked(const std::string& path, const std::string& fmt,
                                               int& exit_code) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "boxc: cannot read " << path << "\n";
        exit_code = kUsage;
        return std::nullopt;
    }
    auto parsed = boxology::parse(text);
    if (!parsed.ok()) {
        print_diagnostics(parsed.diagnostics, path, fmt);
        exit_code = kFindings;
        return std::nullopt;
    }
    auto diags = boxology::validate(*parsed.doc, boxology::Taxonomy::builtin());
    if (boxology::has_errors(diags)) {
        print_diagnostics(diags, path, fmt);
        exit_code = kFindings;
        return std::nullopt;
    }
    exit_code = kOk;
    return parsed.doc;
}

int cmd_check(const std::string& path, const std::string& fmt, bool strict) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "boxc: cannot read " << path << "\n";
        return kUsage;
    }
    auto parsed = boxology::parse(text);
    std::vector<boxology::Diagnostic> diags = parsed.diagnostics;
    if (parsed.ok()) {
        auto more = boxology::validate(*parsed.doc, boxology::Taxonomy::builtin());
        diags.insert(diags.end(), more.begin(), more.end());
        boxology::sort_diagnostics(diags);
    }
    print_diagnostics(diags, path, fmt);
    bool fail = boxology::has_errors(diags) || (strict && !diags.empty());
    return fail ? kFindings : kOk;
}

int cmd_fmt(const std::string& path, bool write) {
    int code = kOk;
    auto doc = load_checked(path, "text", code);
    if (!doc) return code;
    std::string text = boxology::format(*doc);
    if (write) {
        if (!write_file(path, text)) {
            std::cerr << "boxc: cannot write " << path << "\n";
            return kUsage;
        }
    } else {
        std::cout << text;
    }
    return kOk;
}

int cmd_render(const std::string& path, const std::string& out, bool no_pattern, bool no_zoom,
               const std::string& rankdir) {
    int code = kOk;
    auto doc = load_checked(path, "text", code);
    if (!doc) return code;
    boxology::RenderOptions opts;
    opts.show_pattern_frames = !no_pattern;
    opts.show_zoom_frames = !no_zoom;
    opts.rankdir = rankdir == "TB" ? boxology::RenderOptions::RankDir::TB
                                   : boxology::RenderOptions::RankDir::LR;
    if (!write_file(out, boxology::to_dot(*doc, opts))) {
        std::cerr << "boxc: cannot write " << out << "\n";
        return kUsage;
    }
    return kOk;
}

int cmd_detect(const std::string& path, const std::string& pattern, const std::string& fmt) {
    int code = kOk;
    auto doc = load_checked(path, fmt, code);
    if (!doc) return code;
    std::vector<const boxology::PatternTemplate*> patterns;
    if (!pattern.empty()) {
        const auto* p = boxology::find_pattern(pattern);
        if (!p) {
            std::cerr << "boxc: unknown pattern '" << pattern << "'\n";
            return kUsage;
        }
        patterns.push_back(p);
    } else {
        for (const auto& p : boxology::builtin_patterns()) patterns.push_back(&p);
    }
    for (const auto* p : patterns) {
        for (const auto& m : boxology::detect(*doc, *p, boxology::Taxonomy::builtin())) {
            if (fmt == "json") {
                std::cout << boxology::match_to_json(m) << "\n";
            } else {
                std::cout << m.pattern << ":";
                for (const auto& [slot, node] : m.binding) std::cout << " " << slot << "=" << node;
                std::cout << "\n";
            }
        }
    }
    return kOk;
}

int cmd_expand(const std::string& pattern, const std::string& prefix, const std::string& out) {
    const auto* p = boxology::find_pattern(pattern);
    if (!p) {
        std::cerr << "boxc: unknown pattern '" << pattern << "'\n";
        return kUsage;
    }
    std::string text;
    try {
        text = boxology::format(boxology::instantiate(*p, prefix));
    } catch (const std::invalid_argument& ex) {
        std::cerr << "boxc: " << ex.what() << "\n";
        return kUsage;
    }
    if (out.empty()) {
        std::cout << text;
        return kOk;
    }
    if (!write_file(out, text)) {
        std::cerr << "boxc: cannot write " << out << "\n";
        return kUsage;
    }
    return kOk;
}

// attach diagram_refs: an event references the diagram node whose id
// equals its sender (falling back to the receiver)
void bind_trace(boxology::sim::Trace& trace, const boxology::Document& doc) {
    for (auto& e : trace.events) {
        if (doc.find_node(e.sender))
            e.diagram_ref = e.sender;
        else if (doc.find_node(e.receiver))
            e.diagram_ref = e.receiver;
    }
}

int cmd_sim(const std::string& kind, const std::string& config_path, std::uint64_t seed,
            const std::string& trace_path, bool check, const std::string& bind_path) {
    std::string config_text;
    if (!read_file(config_path, config_text)) {
        std::cerr << "boxc: cannot read " << config_path << "\n";
        return kUsage;
    }
    nlohmann::json config = nlohmann::json::parse(config_text, nullptr, false);
    if (config.is_discarded()) {
        std::cerr << "boxc: malformed config json in " << config_path << "\n";
        return kUsage;
    }

    namespace sim = boxology::sim;
    sim::Trace trace;
    bool conformant = true;
    try {
        if (kind == "contract-net") {
            auto cfg = sim::ContractNetConfig::from_json(config);
            cfg.seed = seed;
            trace = sim::run_contract_net(cfg);
            if (check) conformant = sim::check_trace(trace, sim::contract_net_protocol()).conformant();
        } else if (kind == "planning") {
            auto cfg = sim::PlanningConfig::from_json(config);
            cfg.seed = seed;
            auto [schedule, t] = sim::run_distributed_planning(cfg);
            trace = std::move(t);
            nlohmann::ordered_json js = nlohmann::ordered_json::array();
            for (const auto& entry : schedule.entries) {
                nlohmann::ordered_json je;
                je["job"] = entry.job;
                je["assigned"] = entry.assigned;
                if (entry.assigned) {
                    je["machine"] = entry.machine;
                    je["start"] = entry.start;
                    je["end"] = entry.end;
                }
                js.push_back(std::move(je));
            }
            std::cout << js.dump() << "\n";
            if (check) conformant = sim::check_trace(trace, sim::planning_protocol()).conformant();
        } else if (kind == "federated") {
            auto cfg = sim::FederatedConfig::from_json(config);
            cfg.seed = seed;
            auto [global, t] = sim::run_federated_learning(cfg);
            trace = std::move(t);
            nlohmann::ordered_json jg{{"count", global.stats.count},
                                      {"mean", global.mean},
                                      {"variance", global.variance}};
            std::cout << jg.dump() << "\n";
            if (check) conformant = sim::check_trace(trace, sim::federated_protocol()).conformant();
        } else if (kind == "bdi") {
            auto cfg = sim::BdiConfig::from_json(config);
            cfg.seed = seed;
            trace = sim::run_bdi(cfg);
            if (check) conformant = sim::check_bdi_ordering(trace).empty();
        } else {
            std::cerr << "boxc: unknown simulation '" << kind << "'\n";
            return kUsage;
        }
    } catch (const sim::SimError& ex) {
        std::cerr << "boxc: " << ex.what() << "\n";
        return kUsage;
    }

    if (!bind_path.empty()) {
        int code = kOk;
        auto doc = load_checked(bind_path, "text", code);
        if (!doc) return code;
        bind_trace(trace, *doc);
    }
    if (!write_file(trace_path, trace.to_jsonl())) {
        std::cerr << "boxc: cannot write " << trace_path << "\n";
        return kUsage;
    }
    if (check && !conformant) {
        std::cerr << "boxc: trace is not conformant\n";
        return kFindings;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boxology design-pattern toolchain"};
    app.require_subcommand(1);

    std::string file, out, fmt = "text", pattern, prefix, rankdir = "LR", config, trace_path,
                bind_path, kind;
    bool strict = false, write = false, no_pattern = false, no_zoom = false, check = false;
    std::uint64_t seed = 0;

    auto* check_cmd = app.add_subcommand("check", "parse and validate a .bxl file");
    check_cmd->add_option("file", file)->required();
    check_cmd->add_option("--format", fmt)->check(CLI::IsMember({"text", "json"}));
    check_cmd->add_flag("--strict", strict, "treat warnings as errors");

    auto* fmt_cmd = app.add_subcommand("fmt", "canonical formatting");
    fmt_cmd->add_option("file", file)->required();
    fmt_cmd->add_flag("--write", write, "rewrite the file in place");

    auto* render_cmd = app.add_subcommand("render", "emit Graphviz DOT");
    render_cmd->add_option("file", file)->required();
    render_cmd->add_option("-o,--output", out)->required();
    render_cmd->add_flag("--no-pattern-frames", no_pattern);
    render_cmd->add_flag("--no-zoom-frames", no_zoom);
    render_cmd->add_option("--rankdir", rankdir)->check(CLI::IsMember({"LR", "TB"}));

    auto* detect_cmd = app.add_subcommand("detect", "find built-in pattern occurrences");
    detect_cmd->add_option("file", file)->required();
    detect_cmd->add_option("--pattern", pattern);
    detect_cmd->add_option("--format", fmt)->check(CLI::IsMember({"text", "json"}));

    auto* expand_cmd = app.add_subcommand("expand", "instantiate a pattern as a diagram");
    expand_cmd->add_option("--pattern", pattern)->required();
    expand_cmd->add_option("--prefix", prefix)->required();
    expand_cmd->add_option("-o,--output", out);

    auto* sim_cmd = app.add_subcommand("sim", "run an interaction simulation");
    sim_cmd->add_option("kind", kind)
        ->required()
        ->check(CLI::IsMember({"contract-net", "planning", "federated", "bdi"}));
    sim_cmd->add_option("--config", config)->required();
    sim_cmd->add_option("--seed", seed)->required();
    sim_cmd->add_option("--trace", trace_path)->required();
    sim_cmd->add_flag("--check", check, "check trace conformance");
    sim_cmd->add_option("--bind", bind_path, "attach diagram refs from a .bxl file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return kUsage;
    }

    if (check_cmd->parsed()) return cmd_check(file, fmt, strict);
    if (fmt_cmd->parsed()) return cmd_fmt(file, write);
    if (render_cmd->parsed()) return cmd_render(file, out, no_pattern, no_zoom, rankdir);
    if (detect_cmd->parsed()) return cmd_detect(file, pattern, fmt);
    if (expand_cmd->parsed()) return cmd_expand(pattern, prefix, out);
    if (sim_cmd->parsed()) return cmd_sim(kind, config, seed, trace_path, check, bind_path);
    return kUsage;
}
