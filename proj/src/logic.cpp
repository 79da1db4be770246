#include "exo/logic.hpp"

#include <sstream>

namespace exo {

char symbol(Truth t) {
    switch (t) {
        case Truth::False: return 'F';
        case Truth::True: return 'T';
        case Truth::Unknown: return '?';
    }
    return '?';
}

Truth kleene_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
}

Truth kleene_implies(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::True) return Truth::True;
    if (a == Truth::True && b == Truth::False) return Truth::False;
    return Truth::Unknown;
}

namespace {
Truth lift(bool b) { return b ? Truth::True : Truth::False; }
}  // namespace

Truth eval_postulate2(const LogicCase& c) {
    return kleene_and(kleene_implies(lift(c.s && c.r), c.r_prime), kleene_implies(lift(c.s && c.n), c.n_prime));
}

std::vector<LogicRow> postulate2_table() {
    struct Spec {
        const char* group;
        char label;
        const char* description;
        bool s, r, n;
    };
    static const Spec specs[] = {
        {"I", 'a', "no movement, act-sensitive universe", true, false, false},
        {"I", 'b', "no movement, universe without act sensitivity", false, false, false},
        {"II", 'a', "movers without representation only", false, false, true},
        {"II", 'b', "movers with representation only", false, true, false},
        {"II", 'c', "movers with and without representation", false, true, true},
        {"III", 'a', "movers without representation only", true, false, true},
        {"III", 'b', "movers with representation only", true, true, false},
        {"III", 'c', "movers with and without representation", true, true, true},
    };

    std::vector<LogicRow> rows;
    for (const auto& sp : specs) {
        LogicCase c{sp.s, sp.r, sp.n, Truth::Unknown, Truth::Unknown};
        rows.push_back({sp.group, sp.label, sp.description, c, sp.s && sp.r, sp.s && sp.n, eval_postulate2(c)});
    }
    return rows;
}

std::string render_logic_table(const std::vector<LogicRow>& rows) {
    auto tf = [](bool b) { return b ? 'T' : 'F'; };
    std::ostringstream out;
    out << "case   s r n s&r s&n (s&r->r')&(s&n->n')\n";
    for (const auto& row : rows) {
        std::string label = row.group + " " + row.label + ")";
        label.resize(6, ' ');
        out << label << ' ' << tf(row.input.s) << ' ' << tf(row.input.r) << ' ' << tf(row.input.n) << "  "
            << tf(row.s_and_r) << "   " << tf(row.s_and_n) << "  " << symbol(row.value) << "   # " << row.description
            << '\n';
    }
    return out.str();
}

}  // namespace exo
