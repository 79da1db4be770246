#pragma once

// Test-only reference implementations. Nothing here calls into the code paths
// it is used to check: sets are materialized by plain enumeration and
// fractions use their own arithmetic.

#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "exo/architectures.hpp"
#include "exo/universe.hpp"

namespace exo::testing {

struct Fraction {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Fraction make(std::int64_t n, std::int64_t d) {
        if (d < 0) n = -n, d = -d;
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        return g ? Fraction{n / g, d / g} : Fraction{0, 1};
    }
    Fraction operator+(Fraction o) const { return make(num * o.den + o.num * den, den * o.den); }
    Fraction operator-(Fraction o) const { return make(num * o.den - o.num * den, den * o.den); }
    Fraction operator/(std::int64_t k) const { return make(num, den * k); }
    bool operator==(const Fraction&) const = default;
};

/// A random finite world plus an agent-side view of it.
struct RandomCase {
    Universe universe;
    RepresentationMap rmap;
    AlphaBetaTable table;
    std::set<Formula> objectives;
};

inline RandomCase random_case(std::mt19937_64& rng, std::size_t max_states = 8, std::size_t max_acts = 4) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    const std::size_t n = pick(1, max_states);
    const std::size_t m = pick(1, max_acts);

    UniverseBuilder b("random");
    for (std::size_t i = 0; i < n; ++i) b.state("s" + std::to_string(i), static_cast<StateClass>(pick(0, 2)));
    for (std::size_t k = 0; k < m; ++k) b.act("a" + std::to_string(k));
    b.initial("s0").neutral_act("a0").energy({5, 1, 2, 1, 10});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < m; ++k)
            b.transition("s" + std::to_string(i), "a" + std::to_string(k), "s" + std::to_string(pick(0, n - 1)));

    RandomCase c{b.build(), {}, {}, {}};
    // Formula pool smaller than the state count now and then, so some maps
    // are non-injective; some states stay unrepresented.
    const std::size_t formulas = pick(1, n + 1);
    for (std::uint32_t s = 0; s < n; ++s)
        if (pick(0, 5) != 0) c.rmap.assign(StateId(s), Formula{"f" + std::to_string(pick(0, formulas - 1))});

    const auto image_set = c.rmap.image();
    std::vector<Formula> image(image_set.begin(), image_set.end());
    if (!image.empty()) {
        const std::size_t rows = pick(0, 3 * n);
        for (std::size_t r = 0; r < rows; ++r) {
            ActSequence seq;
            for (std::size_t len = pick(1, 3); len > 0; --len) seq.push_back({"a" + std::to_string(pick(0, m - 1))});
            c.table.set(image[pick(0, image.size() - 1)], image[pick(0, image.size() - 1)], seq);
        }
        for (const auto& f : image)
            if (pick(0, 1)) c.objectives.insert(f);
    }
    return c;
}

/// Stability figures computed straight from the set definitions.
struct BruteStability {
    Fraction basic;
    Fraction instability;
    Fraction total;
    std::map<std::string, std::size_t> departures;  // objective atom -> |P_i|
};

inline BruteStability brute_stability(const RandomCase& c) {
    const Universe& u = c.universe;
    const std::int64_t E = static_cast<std::int64_t>(u.state_count());

    std::set<std::uint32_t> pos, neu, neg;
    for (std::uint32_t s = 0; s < E; ++s) {
        auto cls = u.class_of(StateId(s));
        (cls == StateClass::Positive ? pos : cls == StateClass::Neutral ? neu : neg).insert(s);
    }

    // r as a plain lookup, r^-1 by scanning.
    std::map<std::uint32_t, std::string> r;
    for (const auto& [s, f] : c.rmap.entries()) r[s.index] = f.atom;
    auto preimage = [&](const std::string& atom) {
        std::set<std::uint32_t> out;
        for (const auto& [s, f] : r)
            if (f == atom) out.insert(s);
        return out;
    };
    auto has_row = [&](const std::string& from, const std::string& to) {
        for (const auto& [key, seq] : c.table.rows())
            if (key.first.atom == from && key.second.atom == to && !seq.empty()) return true;
        return false;
    };
    auto subset_of = [](const std::set<std::uint32_t>& a, const std::set<std::uint32_t>& b) {
        for (auto x : a)
            if (!b.count(x)) return false;
        return true;
    };

    std::set<std::string> o_plus, o_minus;
    for (const auto& o : c.objectives) {
        auto pre = preimage(o.atom);
        if (pre.empty()) continue;
        if (subset_of(pre, pos)) o_plus.insert(o.atom);
        if (subset_of(pre, neg)) o_minus.insert(o.atom);
    }

    BruteStability out;
    auto departures = [&](const std::string& target) {
        std::set<std::uint32_t> P;
        for (std::uint32_t x = 0; x < E; ++x)
            if (r.count(x) && has_row(r[x], target)) P.insert(x);
        return P;
    };
    for (const auto& o : c.objectives) out.departures[o.atom] = departures(o.atom).size();

    auto goal_term = [&](const std::set<std::string>& goals) {
        Fraction sum;
        for (const auto& g : goals) sum = sum + Fraction::make(static_cast<std::int64_t>(departures(g).size()), E);
        return goals.empty() ? Fraction{} : sum / static_cast<std::int64_t>(goals.size());
    };
    auto escape_term = [&](const std::set<std::uint32_t>& from_class) {
        std::int64_t total = 0;
        for (auto j : neu) {
            if (!r.count(j)) continue;
            for (auto x : from_class)
                if (r.count(x) && has_row(r[x], r[j])) ++total;
        }
        return Fraction::make(total, E);
    };

    out.basic = goal_term(o_plus) + escape_term(neg);
    out.instability = goal_term(o_minus) + escape_term(pos);
    out.total = out.basic - out.instability;
    return out;
}

/// Shortest act path length between two states, or nullopt.
inline std::optional<std::size_t> bfs_distance(const Universe& u, StateId from, StateId to) {
    std::vector<int> dist(u.state_count(), -1);
    std::deque<StateId> queue{from};
    dist[from.index] = 0;
    while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        if (s == to) return static_cast<std::size_t>(dist[s.index]);
        for (std::uint32_t a = 0; a < u.act_count(); ++a) {
            auto next = u.transition(s, ActId(a));
            if (next && dist[next->index] < 0) {
                dist[next->index] = dist[s.index] + 1;
                queue.push_back(*next);
            }
        }
    }
    return std::nullopt;
}

}  // namespace exo::testing
