#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace exo {

/// One functional unit of an architecture graph, with declared metadata.
struct FunctionalUnit {
    std::string id;
    bool bijective = false;
    std::optional<std::string> inverse_of;
};

/// Units plus "output of first feeds second" edges.
struct FunctionalGraph {
    std::vector<FunctionalUnit> units;
    std::vector<std::pair<std::string, std::string>> edges;
};

struct RedundantChain {
    std::string f, f_inverse, g;

    friend auto operator<=>(const RedundantChain&, const RedundantChain&) = default;
};

/// All adjacent chains f -> f_inverse -> g where f is bijective and
/// f_inverse is its declared inverse. Sorted. Throws InconsistentMetadata
/// when inverse declarations are asymmetric, point to unknown units, sit on
/// non-bijective units, or an edge names an unknown unit.
std::vector<RedundantChain> detect_redundancy(const FunctionalGraph& graph);

}  // namespace exo
