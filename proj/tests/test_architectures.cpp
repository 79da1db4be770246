#include <cmath>
#include <random>

#include "doctest.h"
#include "exo/architectures.hpp"
#include "exo/error.hpp"
#include "support/digit_oracle.hpp"
#include "support/oracles.hpp"
#include "support/worlds.hpp"

using namespace exo;

namespace {

ActSequence seq(std::initializer_list<const char*> tokens) {
    ActSequence s;
    for (const char* t : tokens) s.push_back({t});
    return s;
}

AgentArchitecture ejemplo_agent() {
    auto doc = exo::testing::load_fixture("ejemplo5.exo");
    return doc.find_agent("ejemplo")->architecture;
}

}  // namespace

// ---------------------------------------------------------------------------
// Random fasa

TEST_CASE("random fasa is reproducible and seed-dependent") {
    auto f = RandomFasa::uniform(42, 4);
    auto g = RandomFasa::uniform(43, 4);
    std::size_t differ = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        CHECK(step_random(f, t) == step_random(f, t));
        differ += step_random(f, t) != step_random(g, t);
    }
    CHECK(differ > 500);
}

TEST_CASE("random fasa passes a chi-square uniformity check") {
    auto f = RandomFasa::uniform(42, 4);
    std::vector<double> counts(4, 0.0);
    const int n = 10'000;
    for (int t = 0; t < n; ++t) counts[step_random(f, static_cast<std::uint64_t>(t)).index] += 1;
    double chi2 = 0;
    for (double c : counts) chi2 += (c - n / 4.0) * (c - n / 4.0) / (n / 4.0);
    // df = 3: mean 3, sd sqrt(6).
    CHECK(chi2 < 3 + 4 * std::sqrt(6.0));
}

TEST_CASE("weighted random fasa honours zero weights and rejects bad distributions") {
    RandomFasa f{9, 3, {0.5, 0.0, 0.5}};
    for (std::uint64_t t = 0; t < 2000; ++t) CHECK(step_random(f, t).index != 1);
    CHECK_THROWS_AS(check_distribution(RandomFasa{1, 2, {0.7, 0.7}}), Error);
    CHECK_THROWS_AS(check_distribution(RandomFasa{1, 2, {1.0}}), Error);
    CHECK_THROWS_AS(check_distribution(RandomFasa{1, 0, {}}), Error);
}

// ---------------------------------------------------------------------------
// Positional fasa

TEST_CASE("explicit digits select acts in order and run out") {
    PositionalFasa f{ExplicitDigits{{2, 0, 1}}, {ActId(0), ActId(1), ActId(2)}};
    CHECK(step_positional(f, 0) == ActId(2));
    CHECK(step_positional(f, 1) == ActId(0));
    CHECK(step_positional(f, 2) == ActId(1));
    try {
        step_positional(f, 3);
        FAIL("expected DigitSourceExhausted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DigitSourceExhausted);
    }
}

TEST_CASE("pi over ten acts yields 3,1,4,1,5") {
    std::vector<ActId> order;
    for (std::uint32_t i = 0; i < 10; ++i) order.push_back(ActId(i));
    PositionalFasa f{MathConstant::Pi, order};
    std::vector<std::uint32_t> got;
    for (std::uint64_t t = 0; t < 5; ++t) got.push_back(step_positional(f, t).index);
    CHECK(got == std::vector<std::uint32_t>{3, 1, 4, 1, 5});
}

TEST_CASE("pi over four acts follows the base-4 expansion for 1000 steps") {
    PositionalFasa f{MathConstant::Pi, {ActId(3), ActId(1), ActId(0), ActId(2)}};
    const auto digits = exo::testing::oracle_digits(MathConstant::Pi, 4, 1000);
    for (std::uint64_t t = 0; t < 1000; ++t) REQUIRE(step_positional(f, t) == f.act_order[digits[t]]);
}

// ---------------------------------------------------------------------------
// Sensitive architectures

TEST_CASE("AFS-I maps the observed formula to its single act") {
    auto u = exo::testing::ejemplo5();
    AgentArchitecture a;
    a.kind = ArchitectureKind::AFS_I;
    a.representation.assign(*u.find_state("e2"), {"mid"});
    a.representation.assign(*u.find_state("e4"), {"low"});
    a.reactive.set({"low"}, {"up"});
    auto t = step_sensitive(a, u, *u.find_state("e4"));
    CHECK(t.observed->atom == "low");
    CHECK(t.act == *u.find_act("up"));
    // No row: neutral act.
    CHECK(step_sensitive(a, u, *u.find_state("e2")).act == u.neutral_act());
    // Unrepresented state: neutral act, nothing observed.
    auto blind = step_sensitive(a, u, *u.find_state("e5"));
    CHECK_FALSE(blind.observed);
    CHECK(blind.act == u.neutral_act());
}

TEST_CASE("AFS-IIA projects component c of the predicted sequence") {
    auto u = exo::testing::ejemplo5();
    auto a = ejemplo_agent();
    auto t = step_sensitive(a, u, *u.find_state("e3"));
    REQUIRE(t.generated);
    CHECK(*t.generated == seq({"up", "up"}));
    CHECK(t.act == *u.find_act("up"));

    a.predictions.set({"psi3"}, {"psi1"}, seq({"up", "down"}));
    a.projection = 2;
    CHECK(step_sensitive(a, u, *u.find_state("e3")).act == *u.find_act("down"));
    a.projection = 3;
    try {
        step_sensitive(a, u, *u.find_state("e3"));
        FAIL("expected ProjectionOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ProjectionOutOfRange);
    }
}

TEST_CASE("AFS-IIA with no row for the observed formula uses the neutral act") {
    auto u = exo::testing::ejemplo5();
    auto a = ejemplo_agent();
    auto t = step_sensitive(a, u, *u.find_state("e5"));
    CHECK(t.observed->atom == "psi5");
    CHECK_FALSE(t.generated);
    CHECK(t.act == *u.find_act("stay"));
}

TEST_CASE("AFS-IIB predicts toward the formula it observed one step before") {
    auto u = exo::testing::ejemplo5();
    AgentArchitecture a;
    a.kind = ArchitectureKind::AFS_IIB;
    for (int i = 1; i <= 5; ++i) a.representation.assign(*u.find_state("e" + std::to_string(i)), {"p" + std::to_string(i)});
    a.predictions.set({"p2"}, {"p2"}, seq({"up"}));
    a.predictions.set({"p1"}, {"p2"}, seq({"down"}));
    a.memory = Formula{"p2"};

    auto t1 = step_sensitive(a, u, *u.find_state("e2"));
    CHECK(t1.act == *u.find_act("up"));
    CHECK(a.memory->atom == "p2");
    auto t2 = step_sensitive(a, u, *u.find_state("e1"));
    CHECK(t2.act == *u.find_act("down"));  // row (p1, p2): back where it was
    CHECK(a.memory->atom == "p1");
    auto t3 = step_sensitive(a, u, *u.find_state("e1"));
    CHECK_FALSE(t3.generated);  // no (p1, p1) row
}

TEST_CASE("ordered stream: every act is the head of the generated sequence") {
    auto doc = exo::testing::load_fixture("reference.exo");
    const auto& u = doc.universes.at(0);
    auto a = doc.find_agent("oriented")->architecture;
    REQUIRE(a.projection == 1);
    StateId s = u.initial();
    std::size_t violations = 0, generated = 0;
    for (int t = 0; t < 1000; ++t) {
        auto tr = step_sensitive(a, u, s);
        if (tr.generated) {
            ++generated;
            violations += tr.act != interpret_act(u, tr.generated->front());
        }
        s = *u.transition(s, tr.act);
    }
    CHECK(generated == 1000);
    CHECK(violations == 0);
}

// ---------------------------------------------------------------------------
// Learning

TEST_CASE("candidate selection: best rate, untried is optimistic, ties go low") {
    CHECK(select_candidate({}, 3) == 0);
    History h{{{"x"}, 0, false}};
    CHECK(select_candidate(h, 2) == 1);  // 0/1 vs untried
    h.push_back({{"x"}, 1, true});
    h.push_back({{"x"}, 1, false});
    CHECK(select_candidate(h, 2) == 1);  // 0/1 vs 1/2
    h.push_back({{"x"}, 0, true});
    h.push_back({{"x"}, 0, true});
    CHECK(select_candidate(h, 2) == 0);  // 2/3 vs 1/2
    h.push_back({{"x"}, 1, true});
    h.push_back({{"x"}, 1, true});
    h.push_back({{"x"}, 1, true});
    CHECK(select_candidate(h, 2) == 1);  // 2/3 vs 4/5
    CHECK(select_candidate({{{"x"}, 0, true}, {{"x"}, 1, true}}, 2) == 0);
}

TEST_CASE("update_learning appends one record and switches after failures") {
    AgentArchitecture a;
    a.kind = ArchitectureKind::AFS_IIIA;
    a.pool.resize(2);
    auto b = update_learning(a, {"psi"}, false);
    CHECK(a.history.empty());
    REQUIRE(b.history.size() == 1);
    CHECK(b.history[0] == LearningRecord{{"psi"}, 0, false});
    CHECK(b.active_candidate == 1);
    auto c = update_learning(b, {"psi"}, true);
    CHECK(c.history.back().candidate == 1);
    CHECK(c.active_candidate == 1);
}

TEST_CASE("AFS-IIIA abandons a candidate whose predictions miss the goal") {
    auto u = exo::testing::ejemplo5();
    AgentArchitecture a;
    a.kind = ArchitectureKind::AFS_IIIA;
    a.depth = 3;
    for (int i = 1; i <= 5; ++i) a.representation.assign(*u.find_state("e" + std::to_string(i)), {"p" + std::to_string(i)});
    a.goal = Formula{"p1"};
    AlphaBetaTable bad, good;
    bad.set({"p2"}, {"p1"}, seq({"down"}));
    good.set({"p2"}, {"p1"}, seq({"up"}));
    good.set({"p4"}, {"p1"}, seq({"up"}));
    good.set({"p3"}, {"p1"}, seq({"up"}));
    a.pool = {bad, good};

    StateId s = u.initial();
    std::vector<std::size_t> used;
    for (int t = 0; t < 6; ++t) {
        const std::size_t before = a.active_candidate;
        auto tr = step_sensitive(a, u, s);
        if (tr.generated) used.push_back(before);
        s = *u.transition(s, tr.act);
    }
    REQUIRE(!used.empty());
    CHECK(used.front() == 0);
    CHECK(a.active_candidate == 1);
    CHECK(u.state_name(s) == "e1");
    bool failure_recorded = false;
    for (const auto& r : a.history) failure_recorded |= (r.candidate == 0 && !r.success);
    CHECK(failure_recorded);
}

// ---------------------------------------------------------------------------
// Orientation

TEST_CASE("the shipped oriented agent has no violations and one injected wrong act gives one") {
    auto doc = exo::testing::load_fixture("reference.exo");
    const auto& u = doc.universes.at(0);
    auto a = doc.find_agent("oriented")->architecture;
    CHECK(check_oriented(a, u).empty());

    auto key = a.predictions.rows().begin()->first;
    auto broken = a.predictions.rows().begin()->second;
    broken.front() = {"a_stay"};
    a.predictions.set(key.first, key.second, broken);
    auto v = check_oriented(a, u);
    REQUIRE(v.size() == 1);
    CHECK(v[0].source == key.first);
}

TEST_CASE("shortest-path rows are oriented; BFS oracle confirms lengths") {
    auto doc = exo::testing::load_fixture("reference.exo");
    const auto& u = doc.universes.at(0);
    const auto& a = doc.find_agent("oriented")->architecture;
    for (const auto& [key, seq] : a.predictions.rows()) {
        const StateId from = a.representation.preimage(key.first).front();
        const StateId to = a.representation.preimage(key.second).front();
        if (from == to) continue;  // the lap row from the refuge back to itself
        auto d = exo::testing::bfs_distance(u, from, to);
        REQUIRE(d);
        CHECK(seq.size() == *d);
    }
}

TEST_CASE("orientation errors") {
    auto u = exo::testing::ejemplo5();
    AlphaBetaTable t;
    t.set({"ghost"}, {"psi1"}, seq({"up"}));
    RepresentationMap m;
    m.assign(StateId(0), {"psi1"});
    try {
        check_oriented(t, m, u);
        FAIL("expected UnrepresentedFormula");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnrepresentedFormula);
    }
    AgentArchitecture reactive;
    CHECK_THROWS_AS(check_oriented(reactive, u), Error);
}

TEST_CASE("ejemplo rows: psi4 -> psi2 is oriented, psi2 row replays to e1") {
    auto u = exo::testing::ejemplo5();
    auto a = ejemplo_agent();
    CHECK(check_oriented(a, u).empty());
    a.predictions.set({"psi2"}, {"psi1"}, seq({"down"}));
    auto v = check_oriented(a, u);
    REQUIRE(v.size() == 1);
    CHECK(v[0].reached == "e4");
}
