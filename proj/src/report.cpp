#include "exo/report.hpp"

#include <sstream>

#include "json.hpp"

#include "exo/error.hpp"

namespace exo {

const AlphaBetaTable& metric_table(const AgentArchitecture& a, std::size_t candidate) {
    switch (a.kind) {
        case ArchitectureKind::AFS_IIA:
        case ArchitectureKind::AFS_IIB: return a.predictions;
        case ArchitectureKind::AFS_IIIA:
            if (candidate >= a.pool.size())
                throw Error(ErrorCode::InvalidArgument, "candidate " + std::to_string(candidate) + " outside pool of " +
                                                            std::to_string(a.pool.size()));
            return a.pool[candidate];
        default:
            throw Error(ErrorCode::InvalidArgument,
                        std::string("stability metrics need an alpha,beta table; agent is ") + to_string(a.kind));
    }
}

ObjectiveSets agent_objectives(const AgentArchitecture& a, const Universe& u, std::size_t candidate) {
    std::set<Formula> objectives;
    if (a.goal) {
        objectives.insert(*a.goal);
    } else {
        for (const auto& [key, seq] : metric_table(a, candidate).rows()) objectives.insert(key.second);
    }
    return ObjectiveSets::classify(objectives, a.representation, u);
}

StabilityReport agent_stability(const AgentArchitecture& a, const Universe& u, std::size_t candidate) {
    return stability_report(metric_table(a, candidate), a.representation, agent_objectives(a, u, candidate), u);
}

namespace {

std::string join(const std::set<Formula>& fs) {
    std::string out;
    for (const auto& f : fs) out += (out.empty() ? "" : " ") + f.atom;
    return out;
}

nlohmann::ordered_json atoms(const std::set<Formula>& fs) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& f : fs) arr.push_back(f.atom);
    return arr;
}

}  // namespace

std::string report_text(const StabilityReport& r, const std::string& agent) {
    std::ostringstream out;
    out << "agent: " << agent << '\n';
    out << "universe: " << r.universe << '\n';
    out << "states: " << r.state_count << '\n';
    out << "objectives: " << join(r.objectives.all) << '\n';
    out << "positive_objectives: " << join(r.objectives.positive) << '\n';
    out << "negative_objectives: " << join(r.objectives.negative) << '\n';
    for (const auto& d : r.departures) out << "departures[" << d.objective.atom << "]: " << d.departures << '\n';
    for (const auto& n : r.neutral_targets) {
        out << "negative_escapes[" << n.target << "]: " << n.negative_escapes << '\n';
        out << "positive_escapes[" << n.target << "]: " << n.positive_escapes << '\n';
    }
    out << "basic_stability: " << format_rational(r.basic_stability) << '\n';
    out << "instability: " << format_rational(r.instability) << '\n';
    out << "total_stability: " << format_rational(r.total_stability) << '\n';
    return out.str();
}

std::string report_json(const StabilityReport& r, const std::string& agent) {
    nlohmann::ordered_json j;
    j["agent"] = agent;
    j["universe"] = r.universe;
    j["states"] = r.state_count;
    j["objectives"] = atoms(r.objectives.all);
    j["positive_objectives"] = atoms(r.objectives.positive);
    j["negative_objectives"] = atoms(r.objectives.negative);
    auto departures = nlohmann::ordered_json::object();
    for (const auto& d : r.departures) departures[d.objective.atom] = d.departures;
    j["departures"] = departures;
    auto neutral = nlohmann::ordered_json::object();
    for (const auto& n : r.neutral_targets)
        neutral[n.target] = {{"negative_escapes", n.negative_escapes}, {"positive_escapes", n.positive_escapes}};
    j["neutral_targets"] = neutral;
    j["terms"] = {{"positive_goals", format_rational(r.positive_goal_term)},
                  {"negative_escapes", format_rational(r.negative_escape_term)},
                  {"negative_goals", format_rational(r.negative_goal_term)},
                  {"positive_escapes", format_rational(r.positive_escape_term)}};
    j["basic_stability"] = format_rational(r.basic_stability);
    j["instability"] = format_rational(r.instability);
    j["total_stability"] = format_rational(r.total_stability);
    return j.dump(2) + "\n";
}

}  // namespace exo
