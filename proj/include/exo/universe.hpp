#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "exo/ids.hpp"

namespace exo {

enum class StateClass { Positive, Neutral, Negative };

const char* to_string(StateClass c);

/// Exoactivity restrictions as an integer energy budget. Every step costs
/// `per_step_cost`; entering a Negative state subtracts `negative_penalty`,
/// entering a Positive state adds `positive_reward`. Energy never exceeds
/// `energy_cap`, and the system is exoinactive once energy drops to 0 or below.
struct EnergyRules {
    std::int64_t initial_energy = 1;
    std::int64_t per_step_cost = 1;
    std::int64_t negative_penalty = 0;
    std::int64_t positive_reward = 0;
    std::int64_t energy_cap = 2;

    friend bool operator==(const EnergyRules&, const EnergyRules&) = default;
};

struct Violation {
    enum class Kind {
        EmptyStates,
        EmptyActs,
        UnknownInitial,
        UnknownNeutralAct,
        MissingTransition,
        InvalidEnergy,
    };

    Kind kind;
    std::string field;
    std::string identifier;

    /// e.g. "MissingTransition(e1,a2)"
    std::string describe() const;

    friend bool operator==(const Violation&, const Violation&) = default;
};

class UniverseBuilder;

/// A finite world: states, acts, a deterministic transition table, an initial
/// state, the neutral act, a classification of every state and the energy rules.
///
/// States and acts are interned in lexicographic name order, so two universes
/// declared with the same content in a different order get identical ids.
/// Instances are immutable once built; use UniverseBuilder to make one.
class Universe {
public:
    const std::string& name() const { return name_; }

    std::size_t state_count() const { return state_names_.size(); }
    std::size_t act_count() const { return act_names_.size(); }

    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::vector<std::string>& act_names() const { return act_names_; }
    const std::string& state_name(StateId s) const;
    const std::string& act_name(ActId a) const;

    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<ActId> find_act(std::string_view name) const;

    bool contains(StateId s) const { return s.index < state_names_.size(); }
    bool contains(ActId a) const { return a.index < act_names_.size(); }

    /// Throw UnknownState / UnknownAct when the declared name does not resolve.
    StateId initial() const;
    ActId neutral_act() const;
    const std::string& initial_name() const { return initial_name_; }
    const std::string& neutral_act_name() const { return neutral_name_; }

    /// Table entry, or nullopt where the table is not total.
    std::optional<StateId> transition(StateId s, ActId a) const;
    StateClass class_of(StateId s) const;
    const EnergyRules& energy() const { return energy_; }

    std::vector<StateId> states_in(StateClass c) const;

    /// Structural equality on names, table, classes and energy rules.
    friend bool operator==(const Universe& a, const Universe& b);

private:
    friend class UniverseBuilder;

    std::string name_;
    std::vector<std::string> state_names_;
    std::vector<std::string> act_names_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, ActId> act_index_;
    std::string initial_name_;
    std::string neutral_name_;
    std::vector<std::optional<StateId>> table_;  // row-major: state * act_count + act
    std::vector<StateClass> classes_;
    EnergyRules energy_;
};

class UniverseBuilder {
public:
    explicit UniverseBuilder(std::string name) : name_(std::move(name)) {}

    UniverseBuilder& state(std::string name, StateClass c = StateClass::Neutral);
    UniverseBuilder& act(std::string name);
    UniverseBuilder& initial(std::string name);
    UniverseBuilder& neutral_act(std::string name);
    UniverseBuilder& classify(const std::string& state, StateClass c);
    UniverseBuilder& transition(std::string from, std::string act, std::string to);
    UniverseBuilder& energy(const EnergyRules& rules);

    /// Throws Error(UnknownState/UnknownAct) if a transition or classification
    /// names something never declared. Totality and the initial/neutral names
    /// are not checked here; that is validate()'s job.
    Universe build() const;

private:
    struct Edge {
        std::string from, act, to;
    };

    std::string name_;
    std::vector<std::string> states_;
    std::vector<std::string> acts_;
    std::unordered_map<std::string, StateClass> classes_;
    std::vector<Edge> edges_;
    std::string initial_;
    std::string neutral_;
    EnergyRules energy_;
};

/// Empty iff every Universe invariant holds.
std::vector<Violation> validate(const Universe& u);

struct AdvanceResult {
    StateId next;
    std::int64_t energy;
    bool exoactive;

    friend bool operator==(const AdvanceResult&, const AdvanceResult&) = default;
};

/// One discrete step of the world. Pure.
AdvanceResult advance(const Universe& u, StateId current, ActId act, std::int64_t energy);

enum class TerminalReason { ExoinactiveEnergy, StepLimit };

const char* to_string(TerminalReason r);

struct TrajectoryStep {
    std::uint64_t t;
    StateId state_before;
    ActId act;
    StateId state_after;
    std::int64_t energy_after;

    friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    TerminalReason terminal_reason = TerminalReason::StepLimit;

    std::size_t persistence() const { return steps.size(); }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

}  // namespace exo
