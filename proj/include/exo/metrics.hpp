#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "exo/architectures.hpp"
#include "exo/representation.hpp"
#include "exo/universe.hpp"

namespace exo {

using Rational = boost::rational<std::int64_t>;

/// "p/q", always with a denominator ("0/1", "4/5", "-1/5").
std::string format_rational(const Rational& r);

/// Objectives O and their positive / negative parts. A formula is a positive
/// (negative) objective when every state it represents is Positive (Negative).
struct ObjectiveSets {
    std::set<Formula> all;
    std::set<Formula> positive;
    std::set<Formula> negative;

    static ObjectiveSets classify(const std::set<Formula>& objectives, const RepresentationMap& rmap,
                                  const Universe& u);

    friend bool operator==(const ObjectiveSets&, const ObjectiveSets&) = default;
};

/// Departure set toward `target`: every state whose formula has a non-empty
/// row (formula, target) in the table. Ascending.
std::vector<StateId> departure_set(const AlphaBetaTable& table, const RepresentationMap& rmap, const Formula& target,
                                   const Universe& u);

struct StabilityReport {
    struct ObjectiveEntry {
        Formula objective;
        std::size_t departures;  // |P_i|
        friend bool operator==(const ObjectiveEntry&, const ObjectiveEntry&) = default;
    };
    struct NeutralEntry {
        std::string target;         // neutral state name
        std::size_t negative_escapes;  // |A-_j|
        std::size_t positive_escapes;  // |A+_j|
        friend bool operator==(const NeutralEntry&, const NeutralEntry&) = default;
    };

    // context
    std::string universe;
    std::size_t state_count = 0;
    ObjectiveSets objectives;

    std::vector<ObjectiveEntry> departures;
    std::vector<NeutralEntry> neutral_targets;

    Rational positive_goal_term;   // (sum_{O+} |P_i|/|E|) / |O+|
    Rational negative_escape_term; // sum_{E~} |A-_j| / |E|
    Rational negative_goal_term;   // (sum_{O-} |P_i|/|E|) / |O-|
    Rational positive_escape_term; // sum_{E~} |A+_j| / |E|

    Rational basic_stability;
    Rational instability;
    Rational total_stability;

    friend bool operator==(const StabilityReport&, const StabilityReport&) = default;
};

/// Basic stability, instability and total stability of a type-alpha,beta
/// table. Empty O+ (O-) makes its term 0. Exact arithmetic.
StabilityReport stability_report(const AlphaBetaTable& table, const RepresentationMap& rmap,
                                 const ObjectiveSets& objectives, const Universe& u);

struct StabilityDelta {
    Rational basic_stability;
    Rational instability;
    Rational total_stability;

    friend bool operator==(const StabilityDelta&, const StabilityDelta&) = default;
};

/// after - before, componentwise. Throws MismatchedContext unless both reports
/// were computed on the same universe and objective sets.
StabilityDelta compare_learning(const StabilityReport& before, const StabilityReport& after);

}  // namespace exo
