#include "exo/spec_dsl.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "exo/error.hpp"

namespace exo {

std::string ParseDiagnostic::format() const {
    return std::to_string(line) + ":" + std::to_string(column) + ": " +
           (severity == Severity::Error ? "error: " : "warning: ") + message;
}

std::size_t ParseResult::error_count() const {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const auto& d) {
        return d.severity == ParseDiagnostic::Severity::Error;
    }));
}

namespace {

// ===========================================================================
// Lexer

enum class TokKind { Ident, String, Int, LBrace, RBrace, Semi, Colon, Arrow, End };

const char* describe(TokKind k) {
    switch (k) {
        case TokKind::Ident: return "identifier";
        case TokKind::String: return "string";
        case TokKind::Int: return "integer";
        case TokKind::LBrace: return "'{'";
        case TokKind::RBrace: return "'}'";
        case TokKind::Semi: return "';'";
        case TokKind::Colon: return "':'";
        case TokKind::Arrow: return "'->'";
        case TokKind::End: return "end of input";
    }
    return "token";
}

struct Token {
    TokKind kind;
    std::string text;
    std::uint64_t value = 0;
    SourcePos pos;
};

class Diagnostics {
public:
    void error(SourcePos p, std::string msg) {
        items_.push_back({ParseDiagnostic::Severity::Error, std::move(msg), p.line, p.column});
    }
    void warning(SourcePos p, std::string msg) {
        items_.push_back({ParseDiagnostic::Severity::Warning, std::move(msg), p.line, p.column});
    }
    bool has_errors() const {
        return std::any_of(items_.begin(), items_.end(),
                           [](const auto& d) { return d.severity == ParseDiagnostic::Severity::Error; });
    }
    std::size_t size() const { return items_.size(); }
    std::vector<ParseDiagnostic> take() { return std::move(items_); }

private:
    std::vector<ParseDiagnostic> items_;
};

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
public:
    Lexer(std::string_view text, Diagnostics& diags) : text_(text), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            SourcePos start = pos_;
            if (at_end()) {
                out.push_back({TokKind::End, "", 0, start});
                return out;
            }
            char c = peek();
            if (ident_start(c)) {
                std::string word;
                while (!at_end() && ident_char(peek())) word += take();
                out.push_back({TokKind::Ident, std::move(word), 0, start});
            } else if (digit(c)) {
                std::string digits;
                while (!at_end() && digit(peek())) digits += take();
                std::uint64_t v = 0;
                bool overflow = false;
                for (char d : digits) {
                    auto dv = static_cast<std::uint64_t>(d - '0');
                    if (v > (UINT64_MAX - dv) / 10) overflow = true;
                    v = v * 10 + dv;
                }
                if (overflow) diags_.error(start, "integer literal '" + digits + "' does not fit in 64 bits");
                if (!at_end() && ident_char(peek())) {
                    std::string rest;
                    while (!at_end() && ident_char(peek())) rest += take();
                    diags_.error(start, "malformed token '" + digits + rest + "'");
                    continue;
                }
                out.push_back({TokKind::Int, std::move(digits), overflow ? 0 : v, start});
            } else if (c == '"') {
                take();
                std::string s;
                bool closed = false;
                while (!at_end() && peek() != '\n') {
                    char ch = take();
                    if (ch == '"') {
                        closed = true;
                        break;
                    }
                    if (ch == '\\' && !at_end() && peek() != '\n') {
                        char esc = take();
                        if (esc == '"' || esc == '\\')
                            s += esc;
                        else if (esc == 'n')
                            s += '\n';
                        else if (esc == 't')
                            s += '\t';
                        else
                            diags_.error(start, std::string("unknown escape '\\") + esc + "' in string");
                        continue;
                    }
                    s += ch;
                }
                if (!closed) {
                    diags_.error(start, "unterminated string");
                    continue;
                }
                out.push_back({TokKind::String, std::move(s), 0, start});
            } else if (c == '-' && peek(1) == '>') {
                take();
                take();
                out.push_back({TokKind::Arrow, "->", 0, start});
            } else if (c == '{' || c == '}' || c == ';' || c == ':') {
                take();
                TokKind k = c == '{' ? TokKind::LBrace : c == '}' ? TokKind::RBrace : c == ';' ? TokKind::Semi : TokKind::Colon;
                out.push_back({k, std::string(1, c), 0, start});
            } else {
                std::string bad = take_codepoint();
                diags_.error(start, "unexpected character '" + bad + "'");
            }
        }
    }

private:
    bool at_end() const { return i_ >= text_.size(); }
    char peek(std::size_t k = 0) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

    char take() {
        char c = text_[i_++];
        if (c == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            ++pos_.column;  // count code points, not continuation bytes
        }
        return c;
    }

    std::string take_codepoint() {
        std::string s(1, take());
        while (!at_end() && (static_cast<unsigned char>(peek()) & 0xC0) == 0x80) s += take();
        return s;
    }

    void skip_blank() {
        while (!at_end()) {
            char c = peek();
            if (c == '#') {
                while (!at_end() && peek() != '\n') take();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                take();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    Diagnostics& diags_;
    std::size_t i_ = 0;
    SourcePos pos_;
};

// ===========================================================================
// Raw syntax tree

template <typename T>
struct Located {
    T value;
    SourcePos pos;
};

using Name = Located<std::string>;

struct EnergyAst {
    SourcePos pos;
    std::map<std::string, Located<std::uint64_t>> fields;
};

struct UniverseAst {
    Name name;
    std::vector<Name> states;
    std::vector<Name> acts;
    std::optional<Name> initial;
    std::optional<Name> neutral_act;
    struct Transition {
        Name from, act, to;
    };
    std::vector<Transition> transitions;
    std::vector<std::pair<Located<StateClass>, Name>> classified;
    std::optional<EnergyAst> energy;
};

struct PredictAst {
    std::optional<Located<std::uint64_t>> pool;
    Name source, goal;
    std::vector<Name> acts;
};

struct AgentAst {
    Name name;
    Name universe;
    std::optional<Name> architecture;
    std::optional<Located<std::uint64_t>> seed, depth, projection;
    std::optional<Located<std::string>> constant;  // "pi", "e" or "digits"
    std::optional<Name> digits;
    std::vector<std::pair<Name, Name>> represents;  // state -> formula
    std::optional<Name> goal;
    std::vector<std::pair<Name, Name>> reacts;  // formula -> act
    std::vector<PredictAst> predicts;
};

// ===========================================================================
// Parser

struct SyntaxError {};

class Parser {
public:
    Parser(std::vector<Token> tokens, Diagnostics& diags) : toks_(std::move(tokens)), diags_(diags) {}

    void run(std::vector<UniverseAst>& universes, std::vector<AgentAst>& agents) {
        while (!at(TokKind::End)) {
            const Token& t = cur();
            if (is_word("universe")) {
                if (auto u = universe()) universes.push_back(std::move(*u));
            } else if (is_word("agent")) {
                if (auto a = agent()) agents.push_back(std::move(*a));
            } else {
                diags_.error(t.pos, "expected 'universe' or 'agent', found " + show(t));
                ++i_;
                while (!at(TokKind::End) && !is_word("universe") && !is_word("agent")) ++i_;
            }
        }
    }

private:
    const Token& cur() const { return toks_[i_]; }
    bool at(TokKind k) const { return cur().kind == k; }
    bool is_word(std::string_view w) const { return at(TokKind::Ident) && cur().text == w; }

    static std::string show(const Token& t) {
        switch (t.kind) {
            case TokKind::Ident: return "'" + t.text + "'";
            case TokKind::String: return "string \"" + t.text + "\"";
            case TokKind::Int: return "integer " + t.text;
            default: return describe(t.kind);
        }
    }

    [[noreturn]] void fail(const std::string& expected) {
        diags_.error(cur().pos, "expected " + expected + ", found " + show(cur()));
        throw SyntaxError{};
    }

    Token expect(TokKind k) {
        if (!at(k)) fail(describe(k));
        return toks_[i_++];
    }

    void expect_word(std::string_view w) {
        if (!is_word(w)) fail("'" + std::string(w) + "'");
        ++i_;
    }

    Name ident() {
        Token t = expect(TokKind::Ident);
        return {t.text, t.pos};
    }

    Name string() {
        Token t = expect(TokKind::String);
        return {t.text, t.pos};
    }

    Located<std::uint64_t> integer() {
        Token t = expect(TokKind::Int);
        return {t.value, t.pos};
    }

    std::vector<Name> ident_list() {
        std::vector<Name> out;
        out.push_back(ident());
        while (at(TokKind::Ident)) out.push_back(ident());
        return out;
    }

    // Skip the rest of a broken item: through the next ';', or up to (not
    // past) the '}' closing the enclosing block.
    void recover() {
        int depth = 0;
        while (!at(TokKind::End)) {
            if (at(TokKind::LBrace)) ++depth;
            if (at(TokKind::RBrace)) {
                if (depth == 0) return;
                --depth;
            }
            if (at(TokKind::Semi) && depth == 0) {
                ++i_;
                return;
            }
            ++i_;
        }
    }

    template <typename Item>
    bool block(const char* what, SourcePos open, Item item) {
        expect(TokKind::LBrace);
        while (!at(TokKind::RBrace)) {
            if (at(TokKind::End)) {
                diags_.error(open, std::string("unterminated ") + what + " block");
                return false;
            }
            try {
                item();
            } catch (const SyntaxError&) {
                recover();
            }
        }
        ++i_;
        return true;
    }

    template <typename T>
    void set_once(std::optional<T>& slot, T value, const char* what) {
        if (slot) diags_.error(value.pos, std::string("duplicate '") + what + "'");
        slot = std::move(value);
    }

    std::optional<UniverseAst> universe() {
        SourcePos open = cur().pos;
        ++i_;
        UniverseAst u;
        try {
            u.name = string();
        } catch (const SyntaxError&) {
            skip_to_top_level();
            return std::nullopt;
        }
        bool closed = false;
        try {
            closed = block("universe", open, [&] { universe_item(u); });
        } catch (const SyntaxError&) {
            skip_to_top_level();
            return std::nullopt;
        }
        if (!closed) return std::nullopt;
        return u;
    }

    void universe_item(UniverseAst& u) {
        if (!at(TokKind::Ident)) fail("universe item");
        Token head = cur();
        const std::string& w = head.text;
        ++i_;
        if (w == "states") {
            expect(TokKind::Colon);
            auto ids = ident_list();
            u.states.insert(u.states.end(), ids.begin(), ids.end());
            expect(TokKind::Semi);
        } else if (w == "acts") {
            expect(TokKind::Colon);
            auto ids = ident_list();
            u.acts.insert(u.acts.end(), ids.begin(), ids.end());
            expect(TokKind::Semi);
        } else if (w == "initial") {
            expect(TokKind::Colon);
            set_once(u.initial, ident(), "initial");
            expect(TokKind::Semi);
        } else if (w == "neutral_act") {
            expect(TokKind::Colon);
            set_once(u.neutral_act, ident(), "neutral_act");
            expect(TokKind::Semi);
        } else if (w == "transition") {
            Name from = ident();
            Name act = ident();
            Name to = ident();
            expect(TokKind::Semi);
            u.transitions.push_back({from, act, to});
        } else if (w == "classify") {
            Name cls = ident();
            StateClass c;
            if (cls.value == "positive")
                c = StateClass::Positive;
            else if (cls.value == "neutral")
                c = StateClass::Neutral;
            else if (cls.value == "negative")
                c = StateClass::Negative;
            else {
                diags_.error(cls.pos, "expected 'positive', 'neutral' or 'negative', found '" + cls.value + "'");
                throw SyntaxError{};
            }
            expect(TokKind::Colon);
            for (auto& id : ident_list()) u.classified.push_back({{c, cls.pos}, id});
            expect(TokKind::Semi);
        } else if (w == "energy") {
            EnergyAst e;
            e.pos = head.pos;
            bool ok = block("energy", head.pos, [&] {
                Name field = ident();
                static const std::set<std::string> known = {"initial", "per_step", "negative_penalty",
                                                             "positive_reward", "cap"};
                if (!known.count(field.value)) {
                    diags_.error(field.pos, "unknown energy field '" + field.value + "'");
                    throw SyntaxError{};
                }
                expect(TokKind::Colon);
                auto v = integer();
                expect(TokKind::Semi);
                if (!e.fields.emplace(field.value, v).second)
                    diags_.error(field.pos, "duplicate energy field '" + field.value + "'");
            });
            if (!ok) throw SyntaxError{};
            if (u.energy) diags_.error(head.pos, "duplicate 'energy' block");
            u.energy = std::move(e);
        } else {
            diags_.error(head.pos, "unknown universe item '" + w + "'");
            throw SyntaxError{};
        }
    }

    std::optional<AgentAst> agent() {
        SourcePos open = cur().pos;
        ++i_;
        AgentAst a;
        try {
            a.name = string();
            expect_word("in");
            a.universe = string();
        } catch (const SyntaxError&) {
            skip_to_top_level();
            return std::nullopt;
        }
        bool closed = false;
        try {
            closed = block("agent", open, [&] { agent_item(a); });
        } catch (const SyntaxError&) {
            skip_to_top_level();
            return std::nullopt;
        }
        if (!closed) return std::nullopt;
        return a;
    }

    void agent_item(AgentAst& a) {
        if (!at(TokKind::Ident)) fail("agent item");
        Token head = cur();
        const std::string& w = head.text;
        ++i_;
        if (w == "architecture") {
            expect(TokKind::Colon);
            set_once(a.architecture, ident(), "architecture");
            expect(TokKind::Semi);
        } else if (w == "seed" || w == "depth" || w == "projection") {
            expect(TokKind::Colon);
            auto v = integer();
            expect(TokKind::Semi);
            set_once(w == "seed" ? a.seed : w == "depth" ? a.depth : a.projection, v, w.c_str());
        } else if (w == "constant") {
            expect(TokKind::Colon);
            Name which = ident();
            if (which.value != "pi" && which.value != "e" && which.value != "digits") {
                diags_.error(which.pos, "expected 'pi', 'e' or 'digits', found '" + which.value + "'");
                throw SyntaxError{};
            }
            std::optional<Name> digits;
            if (which.value == "digits") digits = string();
            expect(TokKind::Semi);
            set_once(a.constant, which, "constant");
            a.digits = digits;
        } else if (w == "represents") {
            Name state = ident();
            expect(TokKind::Arrow);
            Name formula = string();
            expect(TokKind::Semi);
            a.represents.push_back({state, formula});
        } else if (w == "goal") {
            expect(TokKind::Colon);
            set_once(a.goal, string(), "goal");
            expect(TokKind::Semi);
        } else if (w == "react") {
            Name formula = string();
            expect(TokKind::Colon);
            Name act = ident();
            expect(TokKind::Semi);
            a.reacts.push_back({formula, act});
        } else if (w == "predict" || w == "pool") {
            PredictAst p;
            if (w == "pool") {
                p.pool = integer();
                expect_word("predict");
            }
            p.source = string();
            expect(TokKind::Arrow);
            p.goal = string();
            expect(TokKind::Colon);
            p.acts = ident_list();
            expect(TokKind::Semi);
            a.predicts.push_back(std::move(p));
        } else {
            diags_.error(head.pos, "unknown agent item '" + w + "'");
            throw SyntaxError{};
        }
    }

    void skip_to_top_level() {
        while (!at(TokKind::End) && !is_word("universe") && !is_word("agent")) ++i_;
    }

    std::vector<Token> toks_;
    Diagnostics& diags_;
    std::size_t i_ = 0;
};

// ===========================================================================
// Semantic analysis

struct UniverseSymbols {
    std::set<std::string> states;
    std::set<std::string> acts;
};

std::optional<Universe> analyze_universe(const UniverseAst& ast, Diagnostics& diags, UniverseSymbols& symbols) {
    bool failed = false;
    auto error = [&](SourcePos p, std::string msg) {
        diags.error(p, std::move(msg));
        failed = true;
    };

    for (const auto& s : ast.states)
        if (!symbols.states.insert(s.value).second) error(s.pos, "duplicate state '" + s.value + "'");
    for (const auto& a : ast.acts)
        if (!symbols.acts.insert(a.value).second) error(a.pos, "duplicate act '" + a.value + "'");

    if (ast.states.empty()) error(ast.name.pos, "universe '" + ast.name.value + "' declares no states");
    if (ast.acts.empty()) error(ast.name.pos, "universe '" + ast.name.value + "' declares no acts");

    if (!ast.initial)
        error(ast.name.pos, "universe '" + ast.name.value + "' has no initial state");
    else if (!symbols.states.count(ast.initial->value))
        error(ast.initial->pos, "unknown state '" + ast.initial->value + "'");

    if (!ast.neutral_act)
        error(ast.name.pos, "universe '" + ast.name.value + "' has no neutral_act");
    else if (!symbols.acts.count(ast.neutral_act->value))
        error(ast.neutral_act->pos, "unknown act '" + ast.neutral_act->value + "'");

    std::map<std::pair<std::string, std::string>, std::string> table;
    for (const auto& t : ast.transitions) {
        bool ok = true;
        if (!symbols.states.count(t.from.value)) error(t.from.pos, "unknown state '" + t.from.value + "'"), ok = false;
        if (!symbols.acts.count(t.act.value)) error(t.act.pos, "unknown act '" + t.act.value + "'"), ok = false;
        if (!symbols.states.count(t.to.value)) error(t.to.pos, "unknown state '" + t.to.value + "'"), ok = false;
        if (!ok) continue;
        auto [it, inserted] = table.emplace(std::pair{t.from.value, t.act.value}, t.to.value);
        if (!inserted && it->second != t.to.value)
            error(t.from.pos, "conflicting transition for (" + t.from.value + ", " + t.act.value + ")");
    }

    std::map<std::string, StateClass> classes;
    for (const auto& [cls, state] : ast.classified) {
        if (!symbols.states.count(state.value)) {
            error(state.pos, "unknown state '" + state.value + "'");
            continue;
        }
        auto [it, inserted] = classes.emplace(state.value, cls.value);
        if (!inserted && it->second != cls.value) error(state.pos, "state '" + state.value + "' classified twice");
    }
    for (const auto& s : ast.states)
        if (!classes.count(s.value)) diags.warning(s.pos, "state '" + s.value + "' is unclassified; treated as neutral");

    EnergyRules rules;
    if (!ast.energy) {
        error(ast.name.pos, "universe '" + ast.name.value + "' has no energy block");
    } else {
        const auto& f = ast.energy->fields;
        auto field = [&](const char* key, std::int64_t& slot) {
            auto it = f.find(key);
            if (it == f.end()) {
                error(ast.energy->pos, std::string("energy block lacks '") + key + "'");
                return;
            }
            if (it->second.value > static_cast<std::uint64_t>(INT64_MAX)) {
                error(it->second.pos, std::string("energy field '") + key + "' out of range");
                return;
            }
            slot = static_cast<std::int64_t>(it->second.value);
        };
        field("initial", rules.initial_energy);
        field("per_step", rules.per_step_cost);
        field("negative_penalty", rules.negative_penalty);
        field("positive_reward", rules.positive_reward);
        field("cap", rules.energy_cap);
        if (f.count("initial") && rules.initial_energy <= 0)
            error(f.at("initial").pos, "initial energy must be positive");
        if (f.count("cap") && f.count("initial") && rules.energy_cap < rules.initial_energy)
            error(f.at("cap").pos, "energy cap below initial energy");
    }

    // Totality, reported once per missing pair.
    for (const auto& s : ast.states)
        for (const auto& a : ast.acts)
            if (symbols.states.count(s.value) && symbols.acts.count(a.value) && !table.count({s.value, a.value}))
                error(ast.name.pos, "missing transition (" + s.value + ", " + a.value + ") in universe '" +
                                        ast.name.value + "'");

    if (failed) return std::nullopt;

    UniverseBuilder b(ast.name.value);
    for (const auto& s : ast.states) b.state(s.value, classes.count(s.value) ? classes[s.value] : StateClass::Neutral);
    for (const auto& a : ast.acts) b.act(a.value);
    b.initial(ast.initial->value).neutral_act(ast.neutral_act->value).energy(rules);
    for (const auto& [key, to] : table) b.transition(key.first, key.second, to);
    return b.build();
}

std::optional<std::uint8_t> digit_value(char c) {
    if (c >= '0' && c <= '9') return static_cast<std::uint8_t>(c - '0');
    if (c >= 'a' && c <= 'z') return static_cast<std::uint8_t>(c - 'a' + 10);
    return std::nullopt;
}

std::optional<AgentDecl> analyze_agent(const AgentAst& ast, const Universe* universe, const UniverseSymbols* symbols,
                                       Diagnostics& diags) {
    bool failed = false;
    auto error = [&](SourcePos p, std::string msg) {
        diags.error(p, std::move(msg));
        failed = true;
    };

    if (!symbols) {
        error(ast.universe.pos, "unknown universe '" + ast.universe.value + "'");
        return std::nullopt;
    }

    AgentDecl decl;
    decl.name = ast.name.value;
    decl.universe = ast.universe.value;
    AgentArchitecture& arch = decl.architecture;

    if (!ast.architecture) {
        error(ast.name.pos, "agent '" + ast.name.value + "' has no architecture");
        return std::nullopt;
    }
    auto kind = kind_from_keyword(ast.architecture->value);
    if (!kind) {
        error(ast.architecture->pos, "unknown architecture '" + ast.architecture->value + "'");
        return std::nullopt;
    }
    arch.kind = *kind;
    const bool sensitive = is_sensitive(*kind);

    if (ast.seed) arch.seed = ast.seed->value;
    if (ast.projection) {
        if (ast.projection->value == 0 || ast.projection->value > 1'000'000)
            error(ast.projection->pos, "projection must be a positive index");
        else
            arch.projection = static_cast<unsigned>(ast.projection->value);
    }
    if (ast.depth && (ast.depth->value == 0 || ast.depth->value > 1'000'000))
        error(ast.depth->pos, "depth must be positive");

    if (ast.constant) {
        if (*kind != ArchitectureKind::Positional)
            diags.warning(ast.constant->pos, "'constant' only affects positional agents");
        if (ast.constant->value == "pi") {
            arch.constant = MathConstant::Pi;
        } else if (ast.constant->value == "e") {
            arch.constant = MathConstant::E;
        } else {
            ExplicitDigits digits;
            for (char c : ast.digits->value) {
                auto v = digit_value(c);
                if (!v || *v >= symbols->acts.size()) {
                    error(ast.digits->pos, std::string("digit '") + c + "' outside base " +
                                               std::to_string(symbols->acts.size()));
                    break;
                }
                digits.digits.push_back(*v);
            }
            arch.constant = std::move(digits);
        }
    }

    // Representation
    std::set<std::string> image;
    std::set<std::string> mapped;
    for (const auto& [state, formula] : ast.represents) {
        if (!symbols->states.count(state.value)) {
            error(state.pos, "unknown state '" + state.value + "'");
            continue;
        }
        if (formula.value.empty()) {
            error(formula.pos, "empty formula");
            continue;
        }
        if (!mapped.insert(state.value).second) {
            error(state.pos, "state '" + state.value + "' represented twice");
            continue;
        }
        image.insert(formula.value);
        if (universe) arch.representation.assign(*universe->find_state(state.value), Formula{formula.value});
    }
    if (sensitive && image.size() < 2)
        error(ast.name.pos, "agent '" + ast.name.value + "' representation has " + std::to_string(image.size()) +
                                " distinct formula(s); at least 2 required");

    auto check_formula = [&](const Name& f) {
        if (!image.count(f.value)) {
            error(f.pos, "unknown formula \"" + f.value + "\"");
            return false;
        }
        return true;
    };
    auto check_act = [&](const Name& a) {
        if (!symbols->acts.count(a.value)) {
            error(a.pos, "unknown act '" + a.value + "'");
            return false;
        }
        return true;
    };

    if (ast.goal && check_formula(*ast.goal)) arch.goal = Formula{ast.goal->value};
    if (ast.goal && !sensitive) diags.warning(ast.goal->pos, "'goal' only affects sensitive agents");

    for (const auto& [formula, act] : ast.reacts) {
        if (*kind != ArchitectureKind::AFS_I) {
            error(formula.pos, "'react' rows require architecture afs1");
            continue;
        }
        bool ok = check_formula(formula);
        ok = check_act(act) && ok;
        if (!ok) continue;
        if (arch.reactive.rows().count(Formula{formula.value}))
            error(formula.pos, "duplicate react row for \"" + formula.value + "\"");
        arch.reactive.set(Formula{formula.value}, ActRepresentation{act.value});
    }

    std::size_t longest = arch.reactive.rows().empty() ? 0 : 1;
    std::map<std::uint64_t, SourcePos> pool_seen;
    for (const auto& p : ast.predicts) {
        if (p.pool) {
            if (*kind != ArchitectureKind::AFS_IIIA) {
                error(p.pool->pos, "'pool' rows require architecture afs3a");
                continue;
            }
            if (p.pool->value > 4096) {
                error(p.pool->pos, "pool index too large");
                continue;
            }
        } else if (*kind != ArchitectureKind::AFS_IIA && *kind != ArchitectureKind::AFS_IIB) {
            error(p.source.pos, "'predict' rows require architecture afs2a or afs2b");
            continue;
        }
        bool ok = check_formula(p.source);
        ok = check_formula(p.goal) && ok;
        for (const auto& a : p.acts) ok = check_act(a) && ok;
        if (!ok) continue;

        ActSequence seq;
        for (const auto& a : p.acts) seq.push_back({a.value});
        longest = std::max(longest, seq.size());
        if (ast.depth && seq.size() > ast.depth->value)
            error(p.source.pos, "sequence of length " + std::to_string(seq.size()) + " exceeds depth " +
                                    std::to_string(ast.depth->value));

        AlphaBetaTable* table = &arch.predictions;
        if (p.pool) {
            pool_seen.emplace(p.pool->value, p.pool->pos);
            if (arch.pool.size() <= p.pool->value) arch.pool.resize(p.pool->value + 1);
            table = &arch.pool[p.pool->value];
        }
        if (table->predict(Formula{p.source.value}, Formula{p.goal.value}))
            error(p.source.pos, "duplicate prediction row (\"" + p.source.value + "\", \"" + p.goal.value + "\")");
        table->set(Formula{p.source.value}, Formula{p.goal.value}, std::move(seq));
    }
    for (std::size_t k = 0; k < arch.pool.size(); ++k)
        if (!pool_seen.count(k)) error(ast.name.pos, "candidate pool has no rows for index " + std::to_string(k));

    arch.depth = ast.depth ? static_cast<unsigned>(ast.depth->value) : static_cast<unsigned>(std::max<std::size_t>(longest, 1));

    switch (*kind) {
        case ArchitectureKind::AFS_IIA:
            if (!ast.goal) error(ast.name.pos, "afs2a agent '" + ast.name.value + "' needs a goal");
            break;
        case ArchitectureKind::AFS_IIIA:
            if (!ast.goal) error(ast.name.pos, "afs3a agent '" + ast.name.value + "' needs a goal");
            if (arch.pool.empty()) error(ast.name.pos, "afs3a agent '" + ast.name.value + "' has an empty candidate pool");
            break;
        case ArchitectureKind::AFS_IIB:
            // The goal line seeds the memory slot; without it the first
            // observation does.
            if (arch.goal) arch.memory = arch.goal;
            break;
        default: break;
    }
    if (sensitive && arch.projection > arch.depth)
        diags.warning(ast.projection ? ast.projection->pos : ast.name.pos,
                      "projection " + std::to_string(arch.projection) + " exceeds depth " + std::to_string(arch.depth));

    if (failed) return std::nullopt;
    return decl;
}

}  // namespace

// ===========================================================================

bool same_configuration(const AgentArchitecture& a, const AgentArchitecture& b) {
    return a.kind == b.kind && a.seed == b.seed && a.constant == b.constant && a.representation == b.representation &&
           a.projection == b.projection && a.depth == b.depth && a.goal == b.goal && a.reactive == b.reactive &&
           a.predictions == b.predictions && a.pool == b.pool;
}

const Universe* SpecDocument::find_universe(std::string_view name) const {
    for (const auto& u : universes)
        if (u.name() == name) return &u;
    return nullptr;
}

const AgentDecl* SpecDocument::find_agent(std::string_view name) const {
    for (const auto& a : agents)
        if (a.name == name) return &a;
    return nullptr;
}

const Universe& SpecDocument::universe_of(const AgentDecl& agent) const {
    const Universe* u = find_universe(agent.universe);
    if (!u) throw Error(ErrorCode::SpecInvalid, "agent '" + agent.name + "' refers to unknown universe '" + agent.universe + "'");
    return *u;
}

bool structurally_equal(const SpecDocument& a, const SpecDocument& b) {
    if (a.universes.size() != b.universes.size() || a.agents.size() != b.agents.size()) return false;
    for (std::size_t i = 0; i < a.universes.size(); ++i)
        if (!(a.universes[i] == b.universes[i])) return false;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        const auto& x = a.agents[i];
        const auto& y = b.agents[i];
        if (x.name != y.name || x.universe != y.universe || !same_configuration(x.architecture, y.architecture) ||
            x.architecture.memory != y.architecture.memory)
            return false;
    }
    return true;
}

ParseResult parse(std::string_view text) {
    Diagnostics diags;
    auto tokens = Lexer(text, diags).run();

    std::vector<UniverseAst> universe_asts;
    std::vector<AgentAst> agent_asts;
    Parser(std::move(tokens), diags).run(universe_asts, agent_asts);

    SpecDocument doc;
    std::map<std::string, UniverseSymbols> symbols;
    std::map<std::string, std::size_t> built;
    for (const auto& ast : universe_asts) {
        if (symbols.count(ast.name.value)) {
            diags.error(ast.name.pos, "duplicate universe '" + ast.name.value + "'");
            continue;
        }
        auto u = analyze_universe(ast, diags, symbols[ast.name.value]);
        doc.source_spans["universe " + ast.name.value] = ast.name.pos;
        if (u) {
            built[ast.name.value] = doc.universes.size();
            doc.universes.push_back(std::move(*u));
        }
    }

    std::set<std::string> agent_names;
    for (const auto& ast : agent_asts) {
        if (!agent_names.insert(ast.name.value).second) {
            diags.error(ast.name.pos, "duplicate agent '" + ast.name.value + "'");
            continue;
        }
        auto sym = symbols.find(ast.universe.value);
        const Universe* u = built.count(ast.universe.value) ? &doc.universes[built[ast.universe.value]] : nullptr;
        auto decl = analyze_agent(ast, u, sym == symbols.end() ? nullptr : &sym->second, diags);
        doc.source_spans["agent " + ast.name.value] = ast.name.pos;
        if (decl) doc.agents.push_back(std::move(*decl));
    }

    ParseResult result;
    const bool failed = diags.has_errors();
    result.diagnostics = diags.take();
    if (!failed) result.document = std::move(doc);
    return result;
}

ParseResult parse_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        ParseResult r;
        r.diagnostics.push_back({ParseDiagnostic::Severity::Error, "cannot open '" + path.string() + "'", 1, 1});
        return r;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

// ===========================================================================
// Serializer

namespace {

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\', out += c;
        else if (c == '\n')
            out += "\\n";
        else if (c == '\t')
            out += "\\t";
        else
            out += c;
    }
    return out + "\"";
}

void write_sequence(std::ostream& out, const ActSequence& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i) out << (i ? " " : "") << seq[i].token;
}

void write_universe(std::ostream& out, const Universe& u) {
    out << "universe " << quote(u.name()) << " {\n";
    out << "  states:";
    for (const auto& s : u.state_names()) out << ' ' << s;
    out << ";\n  acts:";
    for (const auto& a : u.act_names()) out << ' ' << a;
    out << ";\n  initial: " << u.initial_name() << ";\n";
    out << "  neutral_act: " << u.neutral_act_name() << ";\n";
    for (auto c : {StateClass::Positive, StateClass::Neutral, StateClass::Negative}) {
        auto members = u.states_in(c);
        if (members.empty()) continue;
        out << "  classify " << to_string(c) << ":";
        for (StateId s : members) out << ' ' << u.state_name(s);
        out << ";\n";
    }
    for (std::uint32_t s = 0; s < u.state_count(); ++s)
        for (std::uint32_t a = 0; a < u.act_count(); ++a)
            if (auto to = u.transition(StateId(s), ActId(a)))
                out << "  transition " << u.state_names()[s] << ' ' << u.act_names()[a] << ' ' << u.state_name(*to)
                    << ";\n";
    const auto& e = u.energy();
    out << "  energy { initial: " << e.initial_energy << "; per_step: " << e.per_step_cost
        << "; negative_penalty: " << e.negative_penalty << "; positive_reward: " << e.positive_reward
        << "; cap: " << e.energy_cap << "; }\n";
    out << "}\n";
}

void write_agent(std::ostream& out, const AgentDecl& agent, const Universe* u) {
    const auto& a = agent.architecture;
    out << "agent " << quote(agent.name) << " in " << quote(agent.universe) << " {\n";
    out << "  architecture: " << keyword(a.kind) << ";\n";
    if (a.kind == ArchitectureKind::Random || a.seed != 0) out << "  seed: " << a.seed << ";\n";
    if (a.kind == ArchitectureKind::Positional || !(a.constant == DigitSource{MathConstant::Pi})) {
        out << "  constant: ";
        if (const auto* d = std::get_if<ExplicitDigits>(&a.constant)) {
            std::string text;
            for (auto v : d->digits) text += static_cast<char>(v < 10 ? '0' + v : 'a' + (v - 10));
            out << "digits " << quote(text);
        } else {
            out << (std::get<MathConstant>(a.constant) == MathConstant::Pi ? "pi" : "e");
        }
        out << ";\n";
    }
    if (is_sensitive(a.kind)) {
        out << "  depth: " << a.depth << ";\n";
        out << "  projection: " << a.projection << ";\n";
    }
    for (const auto& [s, f] : a.representation.entries())
        out << "  represents " << (u ? u->state_name(s) : std::to_string(s.index)) << " -> " << quote(f.atom) << ";\n";
    if (a.kind == ArchitectureKind::AFS_IIB ? a.memory.has_value() : a.goal.has_value())
        out << "  goal: " << quote(a.kind == ArchitectureKind::AFS_IIB ? a.memory->atom : a.goal->atom) << ";\n";
    for (const auto& [f, act] : a.reactive.rows()) out << "  react " << quote(f.atom) << ": " << act.token << ";\n";
    for (const auto& [key, seq] : a.predictions.rows()) {
        out << "  predict " << quote(key.first.atom) << " -> " << quote(key.second.atom) << ": ";
        write_sequence(out, seq);
        out << ";\n";
    }
    for (std::size_t k = 0; k < a.pool.size(); ++k)
        for (const auto& [key, seq] : a.pool[k].rows()) {
            out << "  pool " << k << " predict " << quote(key.first.atom) << " -> " << quote(key.second.atom) << ": ";
            write_sequence(out, seq);
            out << ";\n";
        }
    out << "}\n";
}

}  // namespace

std::string serialize(const SpecDocument& doc) {
    std::ostringstream out;
    bool first = true;
    for (const auto& u : doc.universes) {
        if (!first) out << '\n';
        first = false;
        write_universe(out, u);
    }
    for (const auto& a : doc.agents) {
        if (!first) out << '\n';
        first = false;
        write_agent(out, a, doc.find_universe(a.universe));
    }
    return out.str();
}

}  // namespace exo
