#include "exo/universe.hpp"

#include <algorithm>

#include "exo/error.hpp"

namespace exo {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownState: return "UnknownState";
        case ErrorCode::UnknownAct: return "UnknownAct";
        case ErrorCode::MissingTransition: return "MissingTransition";
        case ErrorCode::UnknownActToken: return "UnknownActToken";
        case ErrorCode::DigitSourceExhausted: return "DigitSourceExhausted";
        case ErrorCode::ProjectionOutOfRange: return "ProjectionOutOfRange";
        case ErrorCode::UnrepresentedFormula: return "UnrepresentedFormula";
        case ErrorCode::InconsistentMetadata: return "InconsistentMetadata";
        case ErrorCode::MismatchedContext: return "MismatchedContext";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::SpecInvalid: return "SpecInvalid";
        case ErrorCode::MissingAgentKind: return "MissingAgentKind";
    }
    return "Error";
}

const char* to_string(StateClass c) {
    switch (c) {
        case StateClass::Positive: return "positive";
        case StateClass::Neutral: return "neutral";
        case StateClass::Negative: return "negative";
    }
    return "?";
}

const char* to_string(TerminalReason r) {
    switch (r) {
        case TerminalReason::ExoinactiveEnergy: return "ExoinactiveEnergy";
        case TerminalReason::StepLimit: return "StepLimit";
    }
    return "?";
}

std::string Violation::describe() const {
    switch (kind) {
        case Kind::EmptyStates: return "EmptyStates";
        case Kind::EmptyActs: return "EmptyActs";
        case Kind::UnknownInitial: return "UnknownInitial(" + identifier + ")";
        case Kind::UnknownNeutralAct: return "UnknownNeutralAct(" + identifier + ")";
        case Kind::MissingTransition: return "MissingTransition(" + identifier + ")";
        case Kind::InvalidEnergy: return "InvalidEnergy(" + field + ")";
    }
    return field;
}

// ---------------------------------------------------------------------------
// Universe

const std::string& Universe::state_name(StateId s) const {
    if (!contains(s)) throw Error(ErrorCode::UnknownState, "state index " + std::to_string(s.index));
    return state_names_[s.index];
}

const std::string& Universe::act_name(ActId a) const {
    if (!contains(a)) throw Error(ErrorCode::UnknownAct, "act index " + std::to_string(a.index));
    return act_names_[a.index];
}

std::optional<StateId> Universe::find_state(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ActId> Universe::find_act(std::string_view name) const {
    auto it = act_index_.find(std::string(name));
    if (it == act_index_.end()) return std::nullopt;
    return it->second;
}

StateId Universe::initial() const {
    auto s = find_state(initial_name_);
    if (!s) throw Error(ErrorCode::UnknownState, "initial state '" + initial_name_ + "'");
    return *s;
}

ActId Universe::neutral_act() const {
    auto a = find_act(neutral_name_);
    if (!a) throw Error(ErrorCode::UnknownAct, "neutral act '" + neutral_name_ + "'");
    return *a;
}

std::optional<StateId> Universe::transition(StateId s, ActId a) const {
    if (!contains(s)) throw Error(ErrorCode::UnknownState, "state index " + std::to_string(s.index));
    if (!contains(a)) throw Error(ErrorCode::UnknownAct, "act index " + std::to_string(a.index));
    return table_[s.index * act_names_.size() + a.index];
}

StateClass Universe::class_of(StateId s) const {
    if (!contains(s)) throw Error(ErrorCode::UnknownState, "state index " + std::to_string(s.index));
    return classes_[s.index];
}

std::vector<StateId> Universe::states_in(StateClass c) const {
    std::vector<StateId> out;
    for (std::uint32_t i = 0; i < classes_.size(); ++i)
        if (classes_[i] == c) out.emplace_back(i);
    return out;
}

bool operator==(const Universe& a, const Universe& b) {
    return a.name_ == b.name_ && a.state_names_ == b.state_names_ && a.act_names_ == b.act_names_ &&
           a.initial_name_ == b.initial_name_ && a.neutral_name_ == b.neutral_name_ && a.table_ == b.table_ &&
           a.classes_ == b.classes_ && a.energy_ == b.energy_;
}

// ---------------------------------------------------------------------------
// UniverseBuilder

UniverseBuilder& UniverseBuilder::state(std::string name, StateClass c) {
    if (std::find(states_.begin(), states_.end(), name) == states_.end()) states_.push_back(name);
    classes_[name] = c;
    return *this;
}

UniverseBuilder& UniverseBuilder::act(std::string name) {
    if (std::find(acts_.begin(), acts_.end(), name) == acts_.end()) acts_.push_back(std::move(name));
    return *this;
}

UniverseBuilder& UniverseBuilder::initial(std::string name) {
    initial_ = std::move(name);
    return *this;
}

UniverseBuilder& UniverseBuilder::neutral_act(std::string name) {
    neutral_ = std::move(name);
    return *this;
}

UniverseBuilder& UniverseBuilder::classify(const std::string& state, StateClass c) {
    classes_[state] = c;
    return *this;
}

UniverseBuilder& UniverseBuilder::transition(std::string from, std::string act, std::string to) {
    edges_.push_back({std::move(from), std::move(act), std::move(to)});
    return *this;
}

UniverseBuilder& UniverseBuilder::energy(const EnergyRules& rules) {
    energy_ = rules;
    return *this;
}

Universe UniverseBuilder::build() const {
    Universe u;
    u.name_ = name_;
    u.state_names_ = states_;
    u.act_names_ = acts_;
    std::sort(u.state_names_.begin(), u.state_names_.end());
    std::sort(u.act_names_.begin(), u.act_names_.end());
    for (std::uint32_t i = 0; i < u.state_names_.size(); ++i) u.state_index_.emplace(u.state_names_[i], StateId(i));
    for (std::uint32_t i = 0; i < u.act_names_.size(); ++i) u.act_index_.emplace(u.act_names_[i], ActId(i));

    u.initial_name_ = initial_;
    u.neutral_name_ = neutral_;
    u.energy_ = energy_;

    u.classes_.assign(u.state_names_.size(), StateClass::Neutral);
    for (const auto& [name, c] : classes_) {
        auto s = u.find_state(name);
        if (!s) throw Error(ErrorCode::UnknownState, "classified state '" + name + "' was never declared");
        u.classes_[s->index] = c;
    }

    u.table_.assign(u.state_names_.size() * u.act_names_.size(), std::nullopt);
    for (const auto& e : edges_) {
        auto from = u.find_state(e.from);
        auto to = u.find_state(e.to);
        auto act = u.find_act(e.act);
        if (!from) throw Error(ErrorCode::UnknownState, "transition source '" + e.from + "'");
        if (!to) throw Error(ErrorCode::UnknownState, "transition target '" + e.to + "'");
        if (!act) throw Error(ErrorCode::UnknownAct, "transition act '" + e.act + "'");
        u.table_[from->index * u.act_names_.size() + act->index] = *to;
    }
    return u;
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate(const Universe& u) {
    using K = Violation::Kind;
    std::vector<Violation> out;

    if (u.state_count() == 0) out.push_back({K::EmptyStates, "states", ""});
    if (u.act_count() == 0) out.push_back({K::EmptyActs, "acts", ""});
    if (!u.find_state(u.initial_name())) out.push_back({K::UnknownInitial, "initial", u.initial_name()});
    if (!u.find_act(u.neutral_act_name())) out.push_back({K::UnknownNeutralAct, "neutral_act", u.neutral_act_name()});

    for (std::uint32_t s = 0; s < u.state_count(); ++s)
        for (std::uint32_t a = 0; a < u.act_count(); ++a)
            if (!u.transition(StateId(s), ActId(a)))
                out.push_back({K::MissingTransition, "transitions", u.state_names()[s] + "," + u.act_names()[a]});

    const auto& e = u.energy();
    if (e.initial_energy <= 0) out.push_back({K::InvalidEnergy, "initial_energy", ""});
    if (e.per_step_cost < 0) out.push_back({K::InvalidEnergy, "per_step_cost", ""});
    if (e.negative_penalty < 0) out.push_back({K::InvalidEnergy, "negative_penalty", ""});
    if (e.positive_reward < 0) out.push_back({K::InvalidEnergy, "positive_reward", ""});
    if (e.energy_cap < e.initial_energy) out.push_back({K::InvalidEnergy, "energy_cap", ""});
    return out;
}

AdvanceResult advance(const Universe& u, StateId current, ActId act, std::int64_t energy) {
    auto next = u.transition(current, act);
    if (!next)
        throw Error(ErrorCode::MissingTransition,
                    "no transition for (" + u.state_name(current) + ", " + u.act_name(act) + ")");

    const auto& rules = u.energy();
    std::int64_t e = energy - rules.per_step_cost;
    switch (u.class_of(*next)) {
        case StateClass::Negative: e -= rules.negative_penalty; break;
        case StateClass::Positive: e += rules.positive_reward; break;
        case StateClass::Neutral: break;
    }
    e = std::min(e, rules.energy_cap);
    return {*next, e, e > 0};
}

}  // namespace exo
