#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exo/universe.hpp"

namespace exo {

/// An opaque formula of the agent's representation language. Two formulas are
/// the same formula iff their tokens are equal.
struct Formula {
    std::string atom;

    friend auto operator<=>(const Formula&, const Formula&) = default;
};

/// Act reference as written inside prediction tables; resolved against a
/// universe by interpret_act.
struct ActRepresentation {
    std::string token;

    friend auto operator<=>(const ActRepresentation&, const ActRepresentation&) = default;
};

using ActSequence = std::vector<ActRepresentation>;

/// State -> formula. May be partial (blind spots); it only counts as a
/// representation when its image has at least two formulas.
class RepresentationMap {
public:
    RepresentationMap() = default;

    void assign(StateId s, Formula f) { entries_[s] = std::move(f); }

    std::optional<Formula> represent(StateId s) const;

    /// All states mapped to `f`, ascending.
    std::vector<StateId> preimage(const Formula& f) const;

    std::set<Formula> image() const;
    bool is_representation() const { return image().size() >= 2; }
    bool covers(const Formula& f) const;

    const std::map<StateId, Formula>& entries() const { return entries_; }

    friend bool operator==(const RepresentationMap&, const RepresentationMap&) = default;

private:
    std::map<StateId, Formula> entries_;
};

inline std::optional<Formula> represent(const RepresentationMap& m, StateId s) { return m.represent(s); }

/// Reality-state interpretation of an act token. Throws UnknownActToken.
ActId interpret_act(const Universe& u, const ActRepresentation& a);

}  // namespace exo
