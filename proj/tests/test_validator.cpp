#include "doctest.h"

#include <cstring>
#include <set>

#include "support/helpers.hpp"
#include "support/mutations.hpp"

using namespace boxology;

namespace {

// parse + validate, returning the set of diagnostic codes
std::multiset<std::string> check_codes(const std::string& source) {
    std::multiset<std::string> codes;
    auto parsed = parse(source);
    if (!parsed.ok()) {
        for (const auto& d : parsed.diagnostics) codes.insert(d.code);
        return codes;
    }
    for (const auto& d : validate(*parsed.doc, Taxonomy::builtin())) codes.insert(d.code);
    return codes;
}

std::set<std::string> distinct(const std::multiset<std::string>& codes) {
    return {codes.begin(), codes.end()};
}

}  // namespace

TEST_CASE("legality table membership") {
    const auto& table = LegalityTable::builtin();
    CHECK(table.edge_legal(NodeKind::Instance, EdgeKind::Flow, NodeKind::Process));
    CHECK(table.edge_legal(NodeKind::Model, EdgeKind::Flow, NodeKind::Process));
    CHECK(table.edge_legal(NodeKind::Process, EdgeKind::Flow, NodeKind::Instance));
    CHECK(table.edge_legal(NodeKind::Process, EdgeKind::Flow, NodeKind::Model));
    CHECK(table.edge_legal(NodeKind::Actor, EdgeKind::Role, NodeKind::Process));
    CHECK(table.edge_legal(NodeKind::Process, EdgeKind::Influence, NodeKind::Model));
    CHECK(table.edge_legal(NodeKind::Actor, EdgeKind::Message, NodeKind::Actor));

    CHECK_FALSE(table.edge_legal(NodeKind::Process, EdgeKind::Flow, NodeKind::Process));
    CHECK_FALSE(table.edge_legal(NodeKind::Instance, EdgeKind::Flow, NodeKind::Model));
    CHECK_FALSE(table.edge_legal(NodeKind::Process, EdgeKind::Role, NodeKind::Actor));
    CHECK_FALSE(table.edge_legal(NodeKind::Model, EdgeKind::Influence, NodeKind::Process));
    CHECK_FALSE(table.edge_legal(NodeKind::Actor, EdgeKind::Message, NodeKind::Process));
}

TEST_CASE("corpus validates with zero errors") {
    for (const auto& name : testsupport::corpus_files()) {
        CAPTURE(name);
        auto doc = testsupport::load_corpus(name);
        auto diags = validate(doc, Taxonomy::builtin());
        CHECK_FALSE(has_errors(diags));
        CHECK(diags.empty());  // corpus is also warning-free
    }
}

TEST_CASE("kind mismatch yields one E002") {
    auto codes = check_codes(R"(diagram "t" {
  process p : model:semantic
  instance d : data
  d -> p
})");
    CHECK(distinct(codes) == std::set<std::string>{"E002"});
    CHECK(codes.count("E002") == 1);  // no cascade
}

TEST_CASE("actor inside a non-team actor zoom is E007") {
    auto codes = check_codes(R"(diagram "t" {
  actor a1 : actor:software
  actor a2 : agent:software
  process p : infer
  a1 -initiates-> p
  a2 -supports-> p
  zoom a1 { a2 }
})");
    CHECK(distinct(codes) == std::set<std::string>{"E007"});
}

TEST_CASE("team zoom may hold actors") {
    auto codes = check_codes(R"(diagram "t" {
  team crew {
    actor a2 : agent:software
  }
  process p : infer
  crew -initiates-> p
  a2 -supports-> p
})");
    CHECK(codes.empty());
}

TEST_CASE("validate is a pure function") {
    auto doc = testsupport::load_corpus("fig4_distributed_planning.bxl");
    auto a = validate(doc, Taxonomy::builtin());
    auto b = validate(doc, Taxonomy::builtin());
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].code == b[i].code);
        CHECK(a[i].message == b[i].message);
        CHECK(a[i].element == b[i].element);
    }
}

TEST_CASE("mutation suite: each single edit yields exactly its documented code") {
    for (const auto& m : testsupport::kMutations) {
        CAPTURE(m.file);
        CAPTURE(m.what);
        auto source = testsupport::apply_mutation(
            testsupport::read_file(testsupport::corpus_path(m.file)), m);
        auto codes = check_codes(source);
        CHECK_MESSAGE(distinct(codes) == std::set<std::string>{m.expected_code},
                      m.file << " / " << m.what);
    }
}

TEST_CASE("diagnostic rendering") {
    Diagnostic d{"E004", Severity::Error, "bad edge", {3, 7, 2}, "a->b"};
    CHECK(diagnostic_to_text(d, "x.bxl") == "x.bxl:3:7: error[E004]: bad edge");
    CHECK(diagnostic_to_json(d, "x.bxl") ==
          R"({"code":"E004","severity":"error","message":"bad edge","file":"x.bxl","line":3,"column":7})");
}
