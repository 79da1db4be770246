#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "exo/digits.hpp"
#include "exo/representation.hpp"
#include "exo/universe.hpp"

namespace exo {

// ---------------------------------------------------------------------------
// Elementary generators

/// Random fasa: acts drawn from a fixed distribution by a counter-based PRNG
/// keyed on (seed, t). Never looks at the world.
struct RandomFasa {
    std::uint64_t seed = 0;
    std::size_t act_count = 1;
    std::vector<double> weights;  // empty means uniform

    static RandomFasa uniform(std::uint64_t seed, std::size_t act_count) { return {seed, act_count, {}}; }
};

/// Throws InvalidArgument for a malformed distribution.
void check_distribution(const RandomFasa& f);

ActId step_random(const RandomFasa& f, std::uint64_t t);

struct ExplicitDigits {
    std::vector<std::uint8_t> digits;
    friend bool operator==(const ExplicitDigits&, const ExplicitDigits&) = default;
};

using DigitSource = std::variant<MathConstant, ExplicitDigits>;

/// Positional fasa: the t-th digit of a fixed number, written in base
/// |act_order|, selects act_order[digit].
struct PositionalFasa {
    DigitSource source = MathConstant::Pi;
    std::vector<ActId> act_order;

    unsigned base() const { return static_cast<unsigned>(act_order.size()); }
};

/// Throws DigitSourceExhausted when explicit digits run out, InvalidArgument
/// for an explicit digit outside the base.
ActId step_positional(const PositionalFasa& f, std::uint64_t t);

// ---------------------------------------------------------------------------
// Prediction tables

/// Type-alpha prediction: formula -> single act. A missing row is the empty
/// prediction.
class AlphaTable {
public:
    void set(Formula state, ActRepresentation act) { rows_[std::move(state)] = std::move(act); }
    std::optional<ActSequence> predict(const Formula& state) const;
    const std::map<Formula, ActRepresentation>& rows() const { return rows_; }

    friend bool operator==(const AlphaTable&, const AlphaTable&) = default;

private:
    std::map<Formula, ActRepresentation> rows_;
};

/// Type-alpha,beta prediction: (source, goal) -> act sequence of length
/// 1..depth. Also used for the alpha,gamma table of the memory architecture,
/// where the second key is the memory formula.
class AlphaBetaTable {
public:
    using Key = std::pair<Formula, Formula>;

    /// Throws InvalidArgument for an empty sequence.
    void set(Formula source, Formula goal, ActSequence seq);
    std::optional<ActSequence> predict(const Formula& source, const Formula& goal) const;
    const std::map<Key, ActSequence>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }
    std::size_t longest() const;

    friend bool operator==(const AlphaBetaTable&, const AlphaBetaTable&) = default;

private:
    std::map<Key, ActSequence> rows_;
};

// ---------------------------------------------------------------------------
// Agent architecture

enum class ArchitectureKind { Random, Positional, AFS_I, AFS_IIA, AFS_IIB, AFS_IIIA };

const char* to_string(ArchitectureKind k);
/// DSL keyword ("random", "afs2a", ...).
const char* keyword(ArchitectureKind k);
std::optional<ArchitectureKind> kind_from_keyword(std::string_view word);
bool is_sensitive(ArchitectureKind k);

struct LearningRecord {
    Formula observed;
    std::size_t candidate;
    bool success;

    friend bool operator==(const LearningRecord&, const LearningRecord&) = default;
};

using History = std::vector<LearningRecord>;

/// The fasa value of one agent. Static configuration plus the per-run mutable
/// slots (memory, history, pending predictions). Copy the value before each
/// run; the mutable slots are single-owner.
struct AgentArchitecture {
    ArchitectureKind kind = ArchitectureKind::AFS_I;

    // random / positional
    std::uint64_t seed = 0;
    DigitSource constant = MathConstant::Pi;

    // sensitive
    RepresentationMap representation;
    unsigned projection = 1;  // c
    unsigned depth = 1;       // d
    std::optional<Formula> goal;
    AlphaTable reactive;         // AFS-I
    AlphaBetaTable predictions;  // AFS-IIA (alpha,beta) / AFS-IIB (alpha,gamma)
    std::vector<AlphaBetaTable> pool;  // AFS-IIIA candidates

    // run state
    std::optional<Formula> memory;  // AFS-IIB feedback formula
    History history;                // AFS-IIIA
    std::size_t active_candidate = 0;

    struct Pending {
        std::uint64_t issued_at;
        std::size_t candidate;
        Formula observed;
    };
    std::vector<Pending> pending;
    std::uint64_t clock = 0;
};

/// Per-step record of the sensitive pipeline, for trace output.
struct StepTrace {
    std::optional<Formula> observed;
    std::optional<ActSequence> generated;
    ActId act;
};

/// One application of f^S: represent the current state, generate the act
/// sequence of the architecture, project component `projection` and
/// interpret it. Absent representation or empty prediction yield the neutral
/// act. Updates memory (AFS-IIB) and learning state (AFS-IIIA).
StepTrace step_sensitive(AgentArchitecture& a, const Universe& u, StateId current);

/// Append one learning record for the active candidate and reselect.
AgentArchitecture update_learning(const AgentArchitecture& a, const Formula& observed, bool success);

/// Candidate with the highest empirical success rate over `history`; untried
/// candidates count as rate 1, ties go to the lowest index.
std::size_t select_candidate(const History& history, std::size_t pool_size);

struct OrientationViolation {
    std::size_t candidate;  // pool index for AFS-IIIA, 0 otherwise
    Formula source;
    Formula goal;
    ActSequence sequence;
    std::string reached;  // name of the state the replay ended in

    friend bool operator==(const OrientationViolation&, const OrientationViolation&) = default;
};

/// Replays every row from each preimage of its source and lists rows that do
/// not end in a preimage of their goal. Throws UnrepresentedFormula.
std::vector<OrientationViolation> check_oriented(const AlphaBetaTable& table, const RepresentationMap& rmap,
                                                 const Universe& u, std::size_t candidate = 0);

/// Applies to AFS-IIA and each AFS-IIIA candidate. Throws InvalidArgument for
/// other kinds.
std::vector<OrientationViolation> check_oriented(const AgentArchitecture& a, const Universe& u);

inline unsigned via_class(const AgentArchitecture& a) { return a.projection; }

}  // namespace exo
