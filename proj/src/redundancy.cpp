#include "exo/redundancy.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "exo/error.hpp"

namespace exo {

std::vector<RedundantChain> detect_redundancy(const FunctionalGraph& graph) {
    std::map<std::string, const FunctionalUnit*> by_id;
    for (const auto& unit : graph.units)
        if (!by_id.emplace(unit.id, &unit).second)
            throw Error(ErrorCode::InconsistentMetadata, "duplicate unit '" + unit.id + "'");

    for (const auto& unit : graph.units) {
        if (!unit.inverse_of) continue;
        auto it = by_id.find(*unit.inverse_of);
        if (it == by_id.end())
            throw Error(ErrorCode::InconsistentMetadata, "'" + unit.id + "' inverts unknown unit '" + *unit.inverse_of + "'");
        const FunctionalUnit& other = *it->second;
        if (!unit.bijective || !other.bijective)
            throw Error(ErrorCode::InconsistentMetadata, "inverse pair '" + unit.id + "'/'" + other.id + "' is not bijective");
        if (other.inverse_of != unit.id)
            throw Error(ErrorCode::InconsistentMetadata, "inverse declaration '" + unit.id + "' -> '" + other.id + "' is not symmetric");
    }

    std::map<std::string, std::set<std::string>> successors;
    for (const auto& [from, to] : graph.edges) {
        if (!by_id.count(from) || !by_id.count(to))
            throw Error(ErrorCode::InconsistentMetadata, "edge '" + from + "' -> '" + to + "' names an unknown unit");
        successors[from].insert(to);
    }

    std::vector<RedundantChain> out;
    for (const auto& [f, inverses] : successors) {
        for (const auto& f_inv : inverses) {
            const FunctionalUnit& inv = *by_id.at(f_inv);
            if (inv.inverse_of != f) continue;
            for (const auto& g : successors[f_inv]) out.push_back({f, f_inv, g});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace exo
