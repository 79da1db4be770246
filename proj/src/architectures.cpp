#include "exo/architectures.hpp"

#include <algorithm>
#include <cmath>

#include "exo/error.hpp"
#include "exo/rng.hpp"

namespace exo {

// ---------------------------------------------------------------------------
// Elementary generators

void check_distribution(const RandomFasa& f) {
    if (f.act_count == 0) throw Error(ErrorCode::InvalidArgument, "random fasa over zero acts");
    if (f.weights.empty()) return;
    if (f.weights.size() != f.act_count)
        throw Error(ErrorCode::InvalidArgument, "weight count does not match act count");
    double sum = 0.0;
    for (double w : f.weights) {
        if (!(w >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative act weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw Error(ErrorCode::InvalidArgument, "act weights do not sum to 1");
}

ActId step_random(const RandomFasa& f, std::uint64_t t) {
    check_distribution(f);
    const std::uint64_t word = stream_word(f.seed, t);
    if (f.weights.empty()) {
        // Multiply-shift maps the word onto [0, n).
        auto idx = static_cast<std::uint32_t>((static_cast<unsigned __int128>(word) * f.act_count) >> 64);
        return ActId(idx);
    }
    const double u = static_cast<double>(word >> 11) * 0x1.0p-53;
    double acc = 0.0;
    for (std::size_t i = 0; i < f.weights.size(); ++i) {
        acc += f.weights[i];
        if (u < acc) return ActId(static_cast<std::uint32_t>(i));
    }
    // Rounding left u above the final partial sum; pick the last act with weight.
    for (std::size_t i = f.weights.size(); i-- > 0;)
        if (f.weights[i] > 0.0) return ActId(static_cast<std::uint32_t>(i));
    return ActId(0);
}

ActId step_positional(const PositionalFasa& f, std::uint64_t t) {
    const unsigned base = f.base();
    if (base == 0) throw Error(ErrorCode::InvalidArgument, "positional fasa with empty act order");

    std::uint8_t digit = 0;
    if (const auto* explicit_digits = std::get_if<ExplicitDigits>(&f.source)) {
        if (t >= explicit_digits->digits.size())
            throw Error(ErrorCode::DigitSourceExhausted,
                        "digit " + std::to_string(t) + " requested from " +
                            std::to_string(explicit_digits->digits.size()) + " explicit digits");
        digit = explicit_digits->digits[t];
        if (digit >= base)
            throw Error(ErrorCode::InvalidArgument,
                        "digit " + std::to_string(digit) + " outside base " + std::to_string(base));
    } else {
        digit = constant_digit(std::get<MathConstant>(f.source), base, t);
    }
    return f.act_order[digit];
}

// ---------------------------------------------------------------------------
// Tables

std::optional<ActSequence> AlphaTable::predict(const Formula& state) const {
    auto it = rows_.find(state);
    if (it == rows_.end()) return std::nullopt;
    return ActSequence{it->second};
}

void AlphaBetaTable::set(Formula source, Formula goal, ActSequence seq) {
    if (seq.empty()) throw Error(ErrorCode::InvalidArgument, "prediction rows need at least one act");
    rows_[{std::move(source), std::move(goal)}] = std::move(seq);
}

std::optional<ActSequence> AlphaBetaTable::predict(const Formula& source, const Formula& goal) const {
    auto it = rows_.find({source, goal});
    if (it == rows_.end()) return std::nullopt;
    return it->second;
}

std::size_t AlphaBetaTable::longest() const {
    std::size_t n = 0;
    for (const auto& [key, seq] : rows_) n = std::max(n, seq.size());
    return n;
}

// ---------------------------------------------------------------------------
// Kinds

const char* to_string(ArchitectureKind k) {
    switch (k) {
        case ArchitectureKind::Random: return "Random";
        case ArchitectureKind::Positional: return "Positional";
        case ArchitectureKind::AFS_I: return "AFS_I";
        case ArchitectureKind::AFS_IIA: return "AFS_IIA";
        case ArchitectureKind::AFS_IIB: return "AFS_IIB";
        case ArchitectureKind::AFS_IIIA: return "AFS_IIIA";
    }
    return "?";
}

const char* keyword(ArchitectureKind k) {
    switch (k) {
        case ArchitectureKind::Random: return "random";
        case ArchitectureKind::Positional: return "positional";
        case ArchitectureKind::AFS_I: return "afs1";
        case ArchitectureKind::AFS_IIA: return "afs2a";
        case ArchitectureKind::AFS_IIB: return "afs2b";
        case ArchitectureKind::AFS_IIIA: return "afs3a";
    }
    return "?";
}

std::optional<ArchitectureKind> kind_from_keyword(std::string_view word) {
    for (auto k : {ArchitectureKind::Random, ArchitectureKind::Positional, ArchitectureKind::AFS_I,
                   ArchitectureKind::AFS_IIA, ArchitectureKind::AFS_IIB, ArchitectureKind::AFS_IIIA})
        if (word == keyword(k)) return k;
    return std::nullopt;
}

bool is_sensitive(ArchitectureKind k) { return k != ArchitectureKind::Random && k != ArchitectureKind::Positional; }

// ---------------------------------------------------------------------------
// Learning

std::size_t select_candidate(const History& history, std::size_t pool_size) {
    if (pool_size == 0) return 0;
    std::vector<std::uint64_t> wins(pool_size, 0), trials(pool_size, 0);
    for (const auto& r : history) {
        if (r.candidate >= pool_size) continue;
        ++trials[r.candidate];
        if (r.success) ++wins[r.candidate];
    }
    // Rate as the exact fraction wins/trials; an untried candidate is 1/1.
    auto num = [&](std::size_t k) { return trials[k] == 0 ? 1 : wins[k]; };
    auto den = [&](std::size_t k) { return trials[k] == 0 ? 1 : trials[k]; };

    std::size_t best = 0;
    for (std::size_t k = 1; k < pool_size; ++k)
        if (num(k) * den(best) > num(best) * den(k)) best = k;
    return best;
}

namespace {

void record(AgentArchitecture& a, Formula observed, std::size_t candidate, bool success) {
    a.history.push_back({std::move(observed), candidate, success});
    a.active_candidate = select_candidate(a.history, a.pool.size());
}

// Settle predictions that reached the goal, or ran past the depth horizon.
void resolve_pending(AgentArchitecture& a, const std::optional<Formula>& observed) {
    std::vector<AgentArchitecture::Pending> still_open;
    for (auto& p : a.pending) {
        if (observed && a.goal && *observed == *a.goal)
            record(a, std::move(p.observed), p.candidate, true);
        else if (a.clock - p.issued_at >= a.depth)
            record(a, std::move(p.observed), p.candidate, false);
        else
            still_open.push_back(std::move(p));
    }
    a.pending = std::move(still_open);
}

}  // namespace

AgentArchitecture update_learning(const AgentArchitecture& a, const Formula& observed, bool success) {
    AgentArchitecture next = a;
    record(next, observed, a.active_candidate, success);
    return next;
}

// ---------------------------------------------------------------------------
// Sensitive step

StepTrace step_sensitive(AgentArchitecture& a, const Universe& u, StateId current) {
    if (!is_sensitive(a.kind))
        throw Error(ErrorCode::InvalidArgument, std::string("step_sensitive on ") + to_string(a.kind) + " agent");
    if (!u.contains(current)) throw Error(ErrorCode::UnknownState, "state index " + std::to_string(current.index));

    StepTrace trace{a.representation.represent(current), std::nullopt, u.neutral_act()};
    const auto& psi = trace.observed;

    switch (a.kind) {
        case ArchitectureKind::AFS_I:
            if (psi) trace.generated = a.reactive.predict(*psi);
            break;

        case ArchitectureKind::AFS_IIA:
            if (!a.goal) throw Error(ErrorCode::InvalidArgument, "AFS-IIA agent without goal");
            if (psi) trace.generated = a.predictions.predict(*psi, *a.goal);
            break;

        case ArchitectureKind::AFS_IIB:
            if (psi) {
                if (!a.memory) a.memory = *psi;
                trace.generated = a.predictions.predict(*psi, *a.memory);
                a.memory = *psi;  // h_s: recall the state just observed
            }
            break;

        case ArchitectureKind::AFS_IIIA: {
            if (a.pool.empty()) throw Error(ErrorCode::InvalidArgument, "AFS-IIIA agent with empty candidate pool");
            if (!a.goal) throw Error(ErrorCode::InvalidArgument, "AFS-IIIA agent without goal");
            resolve_pending(a, psi);
            if (psi) {
                const std::size_t k = a.active_candidate;
                trace.generated = a.pool[k].predict(*psi, *a.goal);
                if (trace.generated)
                    a.pending.push_back({a.clock, k, *psi});
                else if (*psi != *a.goal)
                    record(a, *psi, k, false);
            }
            ++a.clock;
            break;
        }

        default: break;
    }

    if (trace.generated) {
        if (a.projection == 0 || a.projection > trace.generated->size())
            throw Error(ErrorCode::ProjectionOutOfRange,
                        "projection " + std::to_string(a.projection) + " over sequence of length " +
                            std::to_string(trace.generated->size()));
        trace.act = interpret_act(u, (*trace.generated)[a.projection - 1]);
    }
    return trace;
}

// ---------------------------------------------------------------------------
// Orientation

std::vector<OrientationViolation> check_oriented(const AlphaBetaTable& table, const RepresentationMap& rmap,
                                                 const Universe& u, std::size_t candidate) {
    std::vector<OrientationViolation> out;
    for (const auto& [key, seq] : table.rows()) {
        const auto& [source, goal] = key;
        auto starts = rmap.preimage(source);
        auto goals = rmap.preimage(goal);
        if (starts.empty()) throw Error(ErrorCode::UnrepresentedFormula, "'" + source.atom + "'");
        if (goals.empty()) throw Error(ErrorCode::UnrepresentedFormula, "'" + goal.atom + "'");

        for (StateId s : starts) {
            StateId at = s;
            for (const auto& act : seq) {
                auto next = u.transition(at, interpret_act(u, act));
                if (!next)
                    throw Error(ErrorCode::MissingTransition, u.state_name(at) + "," + act.token);
                at = *next;
            }
            if (std::find(goals.begin(), goals.end(), at) == goals.end()) {
                out.push_back({candidate, source, goal, seq, u.state_name(at)});
                break;
            }
        }
    }
    return out;
}

std::vector<OrientationViolation> check_oriented(const AgentArchitecture& a, const Universe& u) {
    switch (a.kind) {
        case ArchitectureKind::AFS_IIA: return check_oriented(a.predictions, a.representation, u, 0);
        case ArchitectureKind::AFS_IIIA: {
            std::vector<OrientationViolation> out;
            for (std::size_t k = 0; k < a.pool.size(); ++k) {
                auto v = check_oriented(a.pool[k], a.representation, u, k);
                out.insert(out.end(), v.begin(), v.end());
            }
            return out;
        }
        default:
            throw Error(ErrorCode::InvalidArgument,
                        std::string("orientation needs an alpha,beta table; agent is ") + to_string(a.kind));
    }
}

}  // namespace exo
