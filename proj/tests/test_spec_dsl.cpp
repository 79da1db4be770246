#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "exo/spec_dsl.hpp"
#include "support/spec_gen.hpp"
#include "support/worlds.hpp"

using namespace exo;

namespace {

std::string read_fixture(const std::string& name) {
    std::ifstream in(exo::testing::fixture(name));
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const ParseDiagnostic* first_error(const ParseResult& r) {
    for (const auto& d : r.diagnostics)
        if (d.severity == ParseDiagnostic::Severity::Error) return &d;
    return nullptr;
}

bool has_message(const ParseResult& r, const std::string& needle) {
    for (const auto& d : r.diagnostics)
        if (d.message.find(needle) != std::string::npos) return true;
    return false;
}

const char* kSmall = R"(universe "w" {
  states: e1 e2;
  acts: a1 a2;
  initial: e1;
  neutral_act: a1;
  classify positive: e1;
  classify negative: e2;
  transition e1 a1 e1;
  transition e1 a2 e2;
  transition e2 a1 e2;
  transition e2 a2 e1;
  energy { initial: 3; per_step: 1; negative_penalty: 0; positive_reward: 0; cap: 3; }
}
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    REQUIRE(at != std::string::npos);
    return text.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("fixtures parse cleanly") {
    for (const char* name : {"ejemplo5.exo", "reference.exo"}) {
        auto r = parse_file(exo::testing::fixture(name));
        CAPTURE(name);
        CHECK(r.ok());
        CHECK(r.diagnostics.empty());
    }
    auto doc = exo::testing::load_fixture("ejemplo5.exo");
    const auto* agent = doc.find_agent("ejemplo");
    REQUIRE(agent);
    CHECK(agent->architecture.kind == ArchitectureKind::AFS_IIA);
    CHECK(agent->architecture.depth == 2);
    CHECK(agent->architecture.predictions.rows().size() == 4);
    CHECK(doc.universe_of(*agent) == exo::testing::ejemplo5());
    CHECK(doc.source_spans.at("agent ejemplo").line > 1);
}

TEST_CASE("round trip on the fixtures") {
    for (const char* name : {"ejemplo5.exo", "reference.exo"}) {
        CAPTURE(name);
        auto first = parse(read_fixture(name));
        REQUIRE(first.ok());
        const auto text = serialize(*first.document);
        auto second = parse(text);
        REQUIRE(second.ok());
        CHECK(structurally_equal(*first.document, *second.document));
        CHECK(serialize(*second.document) == text);
    }
}

TEST_CASE("round trip on 200 generated documents") {
    exo::testing::SpecGenerator gen(99);
    for (int i = 0; i < 200; ++i) {
        const auto source = gen.document();
        auto first = parse(source);
        CAPTURE(source);
        REQUIRE(first.ok());
        const auto text = serialize(*first.document);
        auto second = parse(text);
        REQUIRE(second.ok());
        CHECK(structurally_equal(*first.document, *second.document));
        CHECK(serialize(*second.document) == text);
    }
}

TEST_CASE("mutation fuzz never crashes and never returns an empty verdict") {
    const auto base = read_fixture("reference.exo");
    std::mt19937_64 rng(1);
    for (int i = 0; i < 1000; ++i) {
        const auto text = exo::testing::mutate(base, rng);
        ParseResult r;
        CHECK_NOTHROW(r = parse(text));
        CHECK((r.ok() || r.error_count() > 0));
        if (r.ok()) CHECK(parse(serialize(*r.document)).ok());
    }
}

TEST_CASE("undeclared act in a transition is reported at its position") {
    auto text = replace(kSmall, "transition e2 a2 e1;", "transition e2 a9 e1;");
    auto r = parse(text);
    CHECK_FALSE(r.ok());
    const auto* d = first_error(r);
    REQUIRE(d);
    CHECK(d->message == "unknown act 'a9'");
    CHECK(d->line == 11);
    CHECK(d->column == 17);
    CHECK(d->format() == "11:17: error: unknown act 'a9'");
    CHECK(has_message(r, "missing transition (e2, a2)"));
}

TEST_CASE("missing transition and unknown initial state") {
    auto r = parse(replace(kSmall, "  transition e2 a1 e2;\n", ""));
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "missing transition (e2, a1)"));

    r = parse(replace(kSmall, "initial: e1;", "initial: e7;"));
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "unknown state 'e7'"));
}

TEST_CASE("energy block is mandatory and checked") {
    CHECK(has_message(parse(replace(kSmall, "negative_penalty: 0; ", "")), "lacks 'negative_penalty'"));
    CHECK(has_message(parse(replace(kSmall, "initial: 3;", "initial: 0;")), "initial energy must be positive"));
    CHECK(has_message(parse(replace(kSmall, "cap: 3;", "cap: 2;")), "energy cap below initial energy"));
}

TEST_CASE("unclassified states default to neutral with a warning") {
    auto r = parse(replace(kSmall, "  classify negative: e2;\n", ""));
    REQUIRE(r.ok());
    CHECK(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].severity == ParseDiagnostic::Severity::Warning);
    CHECK(r.document->universes[0].class_of(StateId(1)) == StateClass::Neutral);
}

TEST_CASE("agent checks") {
    const std::string base = kSmall;
    auto agent = [&](const std::string& body) { return parse(base + "agent \"x\" in \"w\" {\n" + body + "}\n"); };

    CHECK(agent("  architecture: random;\n  seed: 3;\n").ok());
    CHECK(has_message(agent("  seed: 3;\n"), "has no architecture"));
    CHECK(has_message(agent("  architecture: afs9;\n"), "unknown architecture 'afs9'"));
    CHECK(has_message(agent("  architecture: afs1;\n  represents e1 -> \"a\";\n"), "at least 2 required"));
    CHECK(has_message(agent("  architecture: afs2a;\n  represents e1 -> \"a\";\n  represents e2 -> \"b\";\n"),
                      "needs a goal"));
    CHECK(has_message(agent("  architecture: afs2a;\n  represents e1 -> \"a\";\n  represents e2 -> \"b\";\n"
                            "  goal: \"a\";\n  predict \"b\" -> \"c\": a2;\n"),
                      "unknown formula \"c\""));
    CHECK(has_message(agent("  architecture: afs2a;\n  depth: 1;\n  represents e1 -> \"a\";\n  represents e2 -> \"b\";\n"
                            "  goal: \"a\";\n  predict \"b\" -> \"a\": a2 a2;\n"),
                      "exceeds depth 1"));
    CHECK(has_message(agent("  architecture: afs3a;\n  represents e1 -> \"a\";\n  represents e2 -> \"b\";\n"
                            "  goal: \"a\";\n  pool 1 predict \"b\" -> \"a\": a2;\n"),
                      "no rows for index 0"));
    CHECK(has_message(agent("  architecture: positional;\n  constant: digits \"0125\";\n"), "outside base 2"));
    CHECK(has_message(parse(base + "agent \"x\" in \"nowhere\" { architecture: random; }\n"), "unknown universe"));
}

TEST_CASE("depth defaults to the longest row and afs2b goal seeds memory") {
    auto r = parse(std::string(kSmall) +
                   "agent \"m\" in \"w\" {\n  architecture: afs2b;\n  represents e1 -> \"a\";\n"
                   "  represents e2 -> \"b\";\n  goal: \"b\";\n  predict \"a\" -> \"b\": a2 a1 a1;\n}\n");
    REQUIRE(r.ok());
    const auto& a = r.document->agents[0].architecture;
    CHECK(a.depth == 3);
    REQUIRE(a.memory);
    CHECK(a.memory->atom == "b");
}

TEST_CASE("lexer errors are positioned and recovery continues") {
    auto r = parse("universe \"w\" {\n  states: e1 $ e2;\n}\nagent \"z\" in \"w\" { architecture: random; }\n");
    CHECK_FALSE(r.ok());
    const auto* d = first_error(r);
    REQUIRE(d);
    CHECK(d->line == 2);
    CHECK(d->column == 14);
    CHECK(r.error_count() >= 1);

    CHECK_FALSE(parse("universe \"w\" { states: e1; acts: a; \"unterminated }").ok());
    CHECK(parse("").ok());  // empty document is valid and empty
    CHECK_FALSE(parse("universe").ok());
    CHECK_FALSE(parse("agent \"q\" in \"w\" { seed: 99999999999999999999999; }").ok());
}
