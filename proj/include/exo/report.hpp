#pragma once

#include <string>

#include "exo/architectures.hpp"
#include "exo/metrics.hpp"
#include "exo/universe.hpp"

namespace exo {

/// The alpha,beta table the stability metrics are computed on: the prediction
/// table of an afs2a/afs2b agent, or pool entry `candidate` of an afs3a agent.
/// Throws InvalidArgument for other kinds or an out-of-range candidate.
const AlphaBetaTable& metric_table(const AgentArchitecture& a, std::size_t candidate = 0);

/// O = {goal} when the agent declares one, otherwise every goal formula that
/// appears in the metric table.
ObjectiveSets agent_objectives(const AgentArchitecture& a, const Universe& u, std::size_t candidate = 0);

StabilityReport agent_stability(const AgentArchitecture& a, const Universe& u, std::size_t candidate = 0);

/// key: value lines, rationals as "p/q".
std::string report_text(const StabilityReport& r, const std::string& agent);
std::string report_json(const StabilityReport& r, const std::string& agent);

}  // namespace exo
