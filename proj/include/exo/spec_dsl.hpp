#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exo/architectures.hpp"
#include "exo/universe.hpp"

namespace exo {

struct SourcePos {
    std::size_t line = 1;
    std::size_t column = 1;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct ParseDiagnostic {
    enum class Severity { Error, Warning };

    Severity severity;
    std::string message;
    std::size_t line;
    std::size_t column;

    /// "3:14: error: unknown act 'a9'"
    std::string format() const;
};

struct AgentDecl {
    std::string name;
    std::string universe;
    AgentArchitecture architecture;
};

/// Structural equality of the static configuration (run state ignored).
bool same_configuration(const AgentArchitecture& a, const AgentArchitecture& b);

/// A parsed and fully cross-checked `.exo` document.
struct SpecDocument {
    std::vector<Universe> universes;
    std::vector<AgentDecl> agents;
    std::map<std::string, SourcePos> source_spans;  // "universe NAME" / "agent NAME"

    const Universe* find_universe(std::string_view name) const;
    const AgentDecl* find_agent(std::string_view name) const;
    /// The universe an agent lives in. Throws SpecInvalid for unknown names.
    const Universe& universe_of(const AgentDecl& agent) const;
};

/// Structural equality: same universes and agents in the same order.
bool structurally_equal(const SpecDocument& a, const SpecDocument& b);

struct ParseResult {
    std::optional<SpecDocument> document;  // set iff no Error diagnostics
    std::vector<ParseDiagnostic> diagnostics;

    bool ok() const { return document.has_value(); }
    std::size_t error_count() const;
};

ParseResult parse(std::string_view text);
ParseResult parse_file(const std::filesystem::path& path);

/// Canonical text: one declaration per line, sorted state and act lists.
std::string serialize(const SpecDocument& doc);

}  // namespace exo
