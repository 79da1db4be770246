// exo: command-line front end for universes, agents, stability metrics and
// persistence experiments described in `.exo` files.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "exo/architectures.hpp"
#include "exo/error.hpp"
#include "exo/logic.hpp"
#include "exo/report.hpp"
#include "exo/simulation.hpp"
#include "exo/spec_dsl.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSpecInvalid = 2;
constexpr int kExitRuntime = 3;

struct SpecInvalid {};

void print_diagnostics(const std::string& path, const exo::ParseResult& r, std::ostream& out) {
    for (const auto& d : r.diagnostics) out << path << ':' << d.format() << '\n';
}

exo::SpecDocument load(const std::string& path) {
    auto parsed = exo::parse_file(path);
    if (!parsed.ok()) {
        print_diagnostics(path, parsed, std::cerr);
        throw SpecInvalid{};
    }
    return std::move(*parsed.document);
}

const exo::AgentDecl& require_agent(const exo::SpecDocument& doc, const std::string& name) {
    const auto* agent = doc.find_agent(name);
    if (!agent) throw exo::Error(exo::ErrorCode::InvalidArgument, "no agent named '" + name + "'");
    return *agent;
}

std::string sequence_text(const std::optional<exo::ActSequence>& seq) {
    if (!seq) return "-";
    std::string out = "[";
    for (std::size_t i = 0; i < seq->size(); ++i) out += (i ? " " : "") + (*seq)[i].token;
    return out + "]";
}

int cmd_validate(const std::string& path) {
    auto parsed = exo::parse_file(path);
    print_diagnostics(path, parsed, parsed.ok() ? std::cout : std::cerr);
    if (!parsed.ok()) return kExitSpecInvalid;
    std::cout << path << ": ok (" << parsed.document->universes.size() << " universe(s), "
              << parsed.document->agents.size() << " agent(s))\n";
    return kExitOk;
}

int cmd_metrics(const std::string& path, const std::string& agent_name, const std::string& format,
                std::size_t candidate) {
    auto doc = load(path);
    const auto& agent = require_agent(doc, agent_name);
    auto report = exo::agent_stability(agent.architecture, doc.universe_of(agent), candidate);
    std::cout << (format == "json" ? exo::report_json(report, agent.name) : exo::report_text(report, agent.name));
    return kExitOk;
}

int cmd_trace(const std::string& path, const std::string& agent_name, std::uint64_t steps, std::uint64_t seed) {
    auto doc = load(path);
    const auto& agent = require_agent(doc, agent_name);
    const auto& u = doc.universe_of(agent);

    std::cout << "t\tstate\tobserved\tgenerated\tact\tnext\tenergy\n";
    auto traj = exo::run_trajectory(u, agent.architecture, steps, seed, [&](const exo::TraceRecord& r) {
        std::cout << r.step.t << '\t' << u.state_name(r.step.state_before) << '\t'
                  << (r.observed ? r.observed->atom : "-") << '\t' << sequence_text(r.generated) << '\t'
                  << u.act_name(r.step.act) << '\t' << u.state_name(r.step.state_after) << '\t'
                  << r.step.energy_after << '\n';
    });
    std::cout << "# persistence " << traj.persistence() << ' ' << exo::to_string(traj.terminal_reason) << '\n';
    return kExitOk;
}

int cmd_experiment(exo::ExperimentConfig cfg) {
    auto doc = load(cfg.spec_path.string());
    auto result = exo::run_experiment(doc, cfg);
    const std::string csv = exo::experiment_csv(result);
    if (cfg.output_path.empty() || cfg.output_path == "-") {
        std::cout << csv;
    } else {
        std::ofstream out(cfg.output_path, std::ios::binary);
        if (!out) throw exo::Error(exo::ErrorCode::InvalidArgument, "cannot write '" + cfg.output_path.string() + "'");
        out << csv;
    }
    std::cerr << exo::experiment_summary_text(result);
    return kExitOk;
}

int cmd_oriented(const std::string& path, const std::string& agent_name) {
    auto doc = load(path);
    const auto& agent = require_agent(doc, agent_name);
    auto violations = exo::check_oriented(agent.architecture, doc.universe_of(agent));
    for (const auto& v : violations)
        std::cout << "not oriented: candidate " << v.candidate << " \"" << v.source.atom << "\" -> \"" << v.goal.atom
                  << "\" " << sequence_text(v.sequence) << " ends in " << v.reached << '\n';
    std::cout << violations.size() << " violation(s)\n";
    return violations.empty() ? kExitOk : kExitRuntime;
}

int cmd_format(const std::string& path) {
    std::cout << exo::serialize(load(path));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exobehavior universes, agents, stability metrics and persistence experiments"};
    app.require_subcommand(1);

    std::string path, agent, format = "text";
    std::uint64_t steps = 20, seed = 0;
    std::size_t candidate = 0;
    exo::ExperimentConfig cfg;
    std::string spec_path, out_path;

    auto* validate = app.add_subcommand("validate", "Parse and check a spec; exit 0 iff clean");
    validate->add_option("file", path, "Spec file (.exo)")->required();

    auto* metrics = app.add_subcommand("metrics", "Stability report of an agent's prediction table");
    metrics->add_option("file", path, "Spec file (.exo)")->required();
    metrics->add_option("--agent", agent, "Agent name")->required();
    metrics->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    metrics->add_option("--candidate", candidate, "Pool index for afs3a agents");

    auto* trace = app.add_subcommand("trace", "Per-step trace of one run");
    trace->add_option("file", path, "Spec file (.exo)")->required();
    trace->add_option("--agent", agent, "Agent name")->required();
    trace->add_option("--steps", steps, "Step limit");
    trace->add_option("--seed", seed, "Run seed");

    auto* experiment = app.add_subcommand("experiment", "Persistence experiment over every agent, CSV output");
    experiment->add_option("file", spec_path, "Spec file (.exo)")->required();
    experiment->add_option("--runs", cfg.runs_per_agent, "Runs per agent")->required()->check(CLI::PositiveNumber);
    experiment->add_option("--max-steps", cfg.max_steps, "Step limit per run")->required();
    experiment->add_option("--seed", cfg.master_seed, "Master seed")->required();
    experiment->add_option("--out", out_path, "CSV output path ('-' for stdout)")->required();
    experiment->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);

    app.add_subcommand("logic-table", "Truth tables of the persistence postulate");

    auto* oriented = app.add_subcommand("oriented", "Replay prediction rows and list the non-oriented ones");
    oriented->add_option("file", path, "Spec file (.exo)")->required();
    oriented->add_option("--agent", agent, "Agent name")->required();

    auto* fmt = app.add_subcommand("format", "Print the canonical serialization");
    fmt->add_option("file", path, "Spec file (.exo)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(path);
        if (*metrics) return cmd_metrics(path, agent, format, candidate);
        if (*trace) return cmd_trace(path, agent, steps, seed);
        if (*experiment) {
            cfg.spec_path = spec_path;
            cfg.output_path = out_path;
            return cmd_experiment(cfg);
        }
        if (*oriented) return cmd_oriented(path, agent);
        if (*fmt) return cmd_format(path);
        std::cout << exo::render_logic_table(exo::postulate2_table());
        return kExitOk;
    } catch (const SpecInvalid&) {
        return kExitSpecInvalid;
    } catch (const exo::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.code() == exo::ErrorCode::SpecInvalid ? kExitSpecInvalid : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
