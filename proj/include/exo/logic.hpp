#pragma once

#include <string>
#include <vector>

namespace exo {

enum class Truth { False, True, Unknown };

char symbol(Truth t);  // 'F', 'T', '?'

Truth kleene_and(Truth a, Truth b);
Truth kleene_implies(Truth a, Truth b);

/// Premises and outcomes of the persistence postulate
///   (s & r -> r') & (s & n -> n')
/// s: the universe is act-sensitive; r / n: systems that move with / without
/// a representation exist; r' / n': those systems persist.
struct LogicCase {
    bool s = false;
    bool r = false;
    bool n = false;
    Truth r_prime = Truth::Unknown;
    Truth n_prime = Truth::Unknown;
};

Truth eval_postulate2(const LogicCase& c);

struct LogicRow {
    std::string group;  // "I", "II", "III"
    char label;         // 'a', 'b', 'c'
    std::string description;
    LogicCase input;
    bool s_and_r;
    bool s_and_n;
    Truth value;
};

/// The eight situations, consequents unknown: (I) systems that cannot move,
/// (II) movers in universes without act sensitivity, (III) movers in
/// act-sensitive universes.
std::vector<LogicRow> postulate2_table();

/// Fixed-width text rendering, one row per line after a header.
std::string render_logic_table(const std::vector<LogicRow>& rows);

}  // namespace exo
