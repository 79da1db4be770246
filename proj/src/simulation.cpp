#include "exo/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "exo/error.hpp"
#include "exo/rng.hpp"

namespace exo {

Trajectory run_trajectory(const Universe& u, const AgentArchitecture& agent, std::uint64_t max_steps,
                          std::uint64_t seed, const TraceSink& trace) {
    AgentArchitecture a = agent;
    const RandomFasa random = RandomFasa::uniform(seed, u.act_count());
    PositionalFasa positional;
    if (a.kind == ArchitectureKind::Positional) {
        positional.source = a.constant;
        for (std::uint32_t i = 0; i < u.act_count(); ++i) positional.act_order.emplace_back(i);
    }

    Trajectory traj;
    StateId state = u.initial();
    std::int64_t energy = u.energy().initial_energy;

    for (std::uint64_t t = 0; t < max_steps; ++t) {
        TraceRecord record{};
        ActId act;
        switch (a.kind) {
            case ArchitectureKind::Random: act = step_random(random, t); break;
            case ArchitectureKind::Positional: act = step_positional(positional, t); break;
            default: {
                StepTrace st = step_sensitive(a, u, state);
                act = st.act;
                record.observed = std::move(st.observed);
                record.generated = std::move(st.generated);
            }
        }

        AdvanceResult r = advance(u, state, act, energy);
        traj.steps.push_back({t, state, act, r.next, r.energy});
        if (trace) {
            record.step = traj.steps.back();
            trace(record);
        }
        state = r.next;
        energy = r.energy;
        if (!r.exoactive) {
            traj.terminal_reason = TerminalReason::ExoinactiveEnergy;
            return traj;
        }
    }
    traj.terminal_reason = TerminalReason::StepLimit;
    return traj;
}

// ---------------------------------------------------------------------------
// Statistics

RankSumResult mann_whitney(const std::vector<double>& first, const std::vector<double>& second) {
    const double n1 = static_cast<double>(first.size());
    const double n2 = static_cast<double>(second.size());
    if (first.empty() || second.empty()) return {0.0, 0.0, 1.0};

    std::vector<std::pair<double, int>> pooled;
    pooled.reserve(first.size() + second.size());
    for (double v : first) pooled.emplace_back(v, 0);
    for (double v : second) pooled.emplace_back(v, 1);
    std::sort(pooled.begin(), pooled.end());

    const double n = n1 + n2;
    double rank_sum_first = 0.0;
    double tie_term = 0.0;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].first == pooled[i].first) ++j;
        const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        for (std::size_t k = i; k < j; ++k)
            if (pooled[k].second == 0) rank_sum_first += avg_rank;
        i = j;
    }

    const double u = rank_sum_first - n1 * (n1 + 1.0) / 2.0;
    const double mean = n1 * n2 / 2.0;
    const double var = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (var <= 0.0) return {u, 0.0, 1.0};

    // Continuity-corrected normal approximation.
    const double diff = u - mean;
    const double corrected = std::max(0.0, std::abs(diff) - 0.5);
    const double z = std::copysign(corrected / std::sqrt(var), diff);
    const double p = std::erfc(std::abs(z) / std::sqrt(2.0));
    return {u, z, std::min(1.0, p)};
}

// ---------------------------------------------------------------------------
// Experiment

namespace {

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

}  // namespace

ExperimentResult run_experiment(const SpecDocument& doc, const ExperimentConfig& cfg) {
    if (cfg.runs_per_agent == 0) throw Error(ErrorCode::InvalidArgument, "runs_per_agent must be positive");

    bool has_random = false, has_positional = false, has_sensitive = false;
    for (const auto& a : doc.agents) {
        has_random |= a.architecture.kind == ArchitectureKind::Random;
        has_positional |= a.architecture.kind == ArchitectureKind::Positional;
        has_sensitive |= is_sensitive(a.architecture.kind);
    }
    if (!has_random || !has_positional || !has_sensitive)
        throw Error(ErrorCode::MissingAgentKind,
                    std::string("experiment needs random, positional and sensitive agents; missing") +
                        (has_random ? "" : " random") + (has_positional ? "" : " positional") +
                        (has_sensitive ? "" : " sensitive"));

    const std::uint64_t total = doc.agents.size() * cfg.runs_per_agent;
    ExperimentResult result;
    result.rows.resize(total);

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t run_id = next.fetch_add(1);
            if (run_id >= total) return;
            try {
                const AgentDecl& agent = doc.agents[run_id / cfg.runs_per_agent];
                const Universe& u = doc.universe_of(agent);
                const std::uint64_t seed = split_seed(cfg.master_seed, run_id);
                Trajectory traj = run_trajectory(u, agent.architecture, cfg.max_steps, seed);
                result.rows[run_id] = {run_id, agent.name, agent.architecture.kind, seed, traj.persistence(),
                                       traj.terminal_reason};
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
                return;
            }
        }
    };

    const unsigned jobs = std::max(1u, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<double> sensitive, random, positional;
    for (std::size_t i = 0; i < doc.agents.size(); ++i) {
        const auto& agent = doc.agents[i];
        std::vector<double> values;
        std::uint64_t lo = UINT64_MAX, hi = 0;
        for (std::uint64_t k = 0; k < cfg.runs_per_agent; ++k) {
            const auto steps = result.rows[i * cfg.runs_per_agent + k].persistence_steps;
            values.push_back(static_cast<double>(steps));
            lo = std::min(lo, steps);
            hi = std::max(hi, steps);
        }
        result.summaries.push_back({agent.name, agent.architecture.kind, mean_of(values), median_of(values), lo, hi});

        auto& group = agent.architecture.kind == ArchitectureKind::Random       ? random
                      : agent.architecture.kind == ArchitectureKind::Positional ? positional
                                                                                : sensitive;
        group.insert(group.end(), values.begin(), values.end());
    }
    result.comparisons.push_back(
        {"sensitive_vs_random", mean_of(sensitive), mean_of(random), mann_whitney(sensitive, random)});
    result.comparisons.push_back(
        {"sensitive_vs_positional", mean_of(sensitive), mean_of(positional), mann_whitney(sensitive, positional)});
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    ParseResult parsed = parse_file(cfg.spec_path);
    if (!parsed.ok()) {
        std::string msg = cfg.spec_path.string();
        for (const auto& d : parsed.diagnostics)
            if (d.severity == ParseDiagnostic::Severity::Error) msg += "\n  " + d.format();
        throw Error(ErrorCode::SpecInvalid, msg);
    }
    return run_experiment(*parsed.document, cfg);
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string experiment_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "run_id,agent,kind,seed,persistence_steps,terminal_reason\r\n";
    for (const auto& r : result.rows)
        out << r.run_id << ',' << csv_field(r.agent) << ',' << to_string(r.kind) << ',' << r.seed << ','
            << r.persistence_steps << ',' << to_string(r.terminal_reason) << "\r\n";
    return out.str();
}

std::string experiment_summary_text(const ExperimentResult& result) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    out << "agent summaries (persistence steps)\n";
    for (const auto& s : result.summaries)
        out << "  " << s.agent << " [" << to_string(s.kind) << "] mean=" << s.mean << " median=" << s.median
            << " min=" << s.min << " max=" << s.max << '\n';
    out << "rank-sum comparisons\n";
    for (const auto& c : result.comparisons)
        out << "  " << c.label << ": sensitive_mean=" << c.sensitive_mean << " other_mean=" << c.other_mean
            << " U=" << c.test.u << " z=" << c.test.z << std::scientific << " p=" << c.test.p_two_sided
            << std::fixed << '\n';
    return out.str();
}

}  // namespace exo
