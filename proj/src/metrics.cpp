#include "exo/metrics.hpp"

#include <algorithm>

#include "exo/error.hpp"

namespace exo {

std::string format_rational(const Rational& r) {
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

ObjectiveSets ObjectiveSets::classify(const std::set<Formula>& objectives, const RepresentationMap& rmap,
                                      const Universe& u) {
    ObjectiveSets out;
    out.all = objectives;
    for (const auto& f : objectives) {
        auto pre = rmap.preimage(f);
        if (pre.empty()) continue;
        auto all_in = [&](StateClass c) {
            return std::all_of(pre.begin(), pre.end(), [&](StateId s) { return u.class_of(s) == c; });
        };
        if (all_in(StateClass::Positive)) out.positive.insert(f);
        if (all_in(StateClass::Negative)) out.negative.insert(f);
    }
    return out;
}

std::vector<StateId> departure_set(const AlphaBetaTable& table, const RepresentationMap& rmap, const Formula& target,
                                   const Universe& u) {
    std::vector<StateId> out;
    for (const auto& [s, psi] : rmap.entries()) {
        if (!u.contains(s)) continue;
        if (table.predict(psi, target)) out.push_back(s);
    }
    return out;
}

namespace {

// Members of `cls` whose formula has a row toward `target`.
std::size_t escapes_toward(const AlphaBetaTable& table, const RepresentationMap& rmap, const Formula& target,
                           const Universe& u, StateClass cls) {
    std::size_t n = 0;
    for (StateId s : u.states_in(cls)) {
        auto psi = rmap.represent(s);
        if (psi && table.predict(*psi, target)) ++n;
    }
    return n;
}

}  // namespace

StabilityReport stability_report(const AlphaBetaTable& table, const RepresentationMap& rmap,
                                 const ObjectiveSets& objectives, const Universe& u) {
    StabilityReport r;
    r.universe = u.name();
    r.state_count = u.state_count();
    r.objectives = objectives;

    const auto states = static_cast<std::int64_t>(u.state_count());
    if (states == 0) return r;

    for (const auto& o : objectives.all)
        r.departures.push_back({o, departure_set(table, rmap, o, u).size()});

    auto goal_term = [&](const std::set<Formula>& goals) {
        if (goals.empty()) return Rational(0);
        Rational sum(0);
        for (const auto& o : goals)
            sum += Rational(static_cast<std::int64_t>(departure_set(table, rmap, o, u).size()), states);
        return sum / static_cast<std::int64_t>(goals.size());
    };
    r.positive_goal_term = goal_term(objectives.positive);
    r.negative_goal_term = goal_term(objectives.negative);

    std::int64_t negative_escapes = 0;
    std::int64_t positive_escapes = 0;
    for (StateId j : u.states_in(StateClass::Neutral)) {
        StabilityReport::NeutralEntry entry{u.state_name(j), 0, 0};
        if (auto target = rmap.represent(j)) {
            entry.negative_escapes = escapes_toward(table, rmap, *target, u, StateClass::Negative);
            entry.positive_escapes = escapes_toward(table, rmap, *target, u, StateClass::Positive);
        }
        negative_escapes += static_cast<std::int64_t>(entry.negative_escapes);
        positive_escapes += static_cast<std::int64_t>(entry.positive_escapes);
        r.neutral_targets.push_back(std::move(entry));
    }
    r.negative_escape_term = Rational(negative_escapes, states);
    r.positive_escape_term = Rational(positive_escapes, states);

    r.basic_stability = r.positive_goal_term + r.negative_escape_term;
    r.instability = r.negative_goal_term + r.positive_escape_term;
    r.total_stability = r.basic_stability - r.instability;
    return r;
}

StabilityDelta compare_learning(const StabilityReport& before, const StabilityReport& after) {
    if (before.universe != after.universe || before.state_count != after.state_count ||
        !(before.objectives == after.objectives))
        throw Error(ErrorCode::MismatchedContext, "reports come from different universes or objective sets");
    return {after.basic_stability - before.basic_stability, after.instability - before.instability,
            after.total_stability - before.total_stability};
}

}  // namespace exo
