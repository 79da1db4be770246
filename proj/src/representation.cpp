#include "exo/representation.hpp"

#include "exo/error.hpp"

namespace exo {

std::optional<Formula> RepresentationMap::represent(StateId s) const {
    auto it = entries_.find(s);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

std::vector<StateId> RepresentationMap::preimage(const Formula& f) const {
    std::vector<StateId> out;
    for (const auto& [s, g] : entries_)
        if (g == f) out.push_back(s);
    return out;
}

std::set<Formula> RepresentationMap::image() const {
    std::set<Formula> out;
    for (const auto& [s, f] : entries_) out.insert(f);
    return out;
}

bool RepresentationMap::covers(const Formula& f) const {
    for (const auto& [s, g] : entries_)
        if (g == f) return true;
    return false;
}

ActId interpret_act(const Universe& u, const ActRepresentation& a) {
    auto act = u.find_act(a.token);
    if (!act) throw Error(ErrorCode::UnknownActToken, "'" + a.token + "' in universe '" + u.name() + "'");
    return *act;
}

}  // namespace exo
