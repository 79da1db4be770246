#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exo/architectures.hpp"
#include "exo/spec_dsl.hpp"
#include "exo/universe.hpp"

namespace exo {

/// Per-step observation hook; receives the step just taken and, for sensitive
/// agents, what the architecture saw and generated.
struct TraceRecord {
    TrajectoryStep step;
    std::optional<Formula> observed;
    std::optional<ActSequence> generated;
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// Drives one agent through the universe from its initial state: pick an act,
/// advance, stop when exoinactive or after `max_steps`. `seed` keys the random
/// fasa; other kinds ignore it. The agent is copied, so the caller's value
/// keeps its initial run state.
Trajectory run_trajectory(const Universe& u, const AgentArchitecture& agent, std::uint64_t max_steps,
                          std::uint64_t seed, const TraceSink& trace = {});

struct ExperimentConfig {
    std::filesystem::path spec_path;
    std::uint64_t runs_per_agent = 1;
    std::uint64_t max_steps = 1;
    std::uint64_t master_seed = 0;
    std::filesystem::path output_path;
    unsigned jobs = 1;
};

struct ExperimentRow {
    std::uint64_t run_id;
    std::string agent;
    ArchitectureKind kind;
    std::uint64_t seed;
    std::uint64_t persistence_steps;
    TerminalReason terminal_reason;
};

struct AgentSummary {
    std::string agent;
    ArchitectureKind kind;
    double mean;
    double median;
    std::uint64_t min;
    std::uint64_t max;
};

/// Two-sample Mann-Whitney rank-sum test with tie-corrected normal
/// approximation. `u` is the statistic of the first sample.
struct RankSumResult {
    double u;
    double z;
    double p_two_sided;
};

RankSumResult mann_whitney(const std::vector<double>& first, const std::vector<double>& second);

struct GroupComparison {
    std::string label;  // "sensitive_vs_random", ...
    double sensitive_mean;
    double other_mean;
    RankSumResult test;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;  // ordered by run_id
    std::vector<AgentSummary> summaries;
    std::vector<GroupComparison> comparisons;
};

/// Every agent of the document, `runs_per_agent` times. Run k of agent i has
/// run_id i * runs_per_agent + k and seed split_seed(master_seed, run_id).
/// Throws MissingAgentKind unless random, positional and sensitive agents are
/// all present.
ExperimentResult run_experiment(const SpecDocument& doc, const ExperimentConfig& cfg);

/// Parses cfg.spec_path first; throws SpecInvalid with the diagnostics.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// RFC-4180 CSV, header run_id,agent,kind,seed,persistence_steps,terminal_reason.
std::string experiment_csv(const ExperimentResult& result);

std::string experiment_summary_text(const ExperimentResult& result);

}  // namespace exo
