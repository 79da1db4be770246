#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "exo/architectures.hpp"
#include "exo/digits.hpp"
#include "exo/error.hpp"
#include "exo/logic.hpp"
#include "exo/metrics.hpp"
#include "exo/report.hpp"
#include "exo/simulation.hpp"
#include "exo/spec_dsl.hpp"

namespace py = pybind11;
using namespace exo;

namespace {

py::object fraction(const Rational& r) {
    static py::object cls = py::module_::import("fractions").attr("Fraction");
    return cls(r.numerator(), r.denominator());
}

const AgentDecl& agent_named(const SpecDocument& doc, const std::string& name) {
    const auto* a = doc.find_agent(name);
    if (!a) throw Error(ErrorCode::InvalidArgument, "no agent named '" + name + "'");
    return *a;
}

std::string sequence_text(const ActSequence& seq) {
    std::string out;
    for (const auto& a : seq) out += (out.empty() ? "" : " ") + a.token;
    return out;
}

SpecDocument parse_or_raise(const ParseResult& r) {
    if (r.ok()) return *r.document;
    std::string msg = "invalid spec";
    for (const auto& d : r.diagnostics) msg += "\n" + d.format();
    throw Error(ErrorCode::SpecInvalid, msg);
}

py::list diagnostics(const ParseResult& r) {
    py::list out;
    for (const auto& d : r.diagnostics)
        out.append(py::dict(py::arg("severity") = d.severity == ParseDiagnostic::Severity::Error ? "error" : "warning",
                            py::arg("message") = d.message, py::arg("line") = d.line, py::arg("column") = d.column));
    return out;
}

py::dict stability_dict(const StabilityReport& r) {
    auto names = [](const std::set<Formula>& fs) {
        std::vector<std::string> out;
        for (const auto& f : fs) out.push_back(f.atom);
        return out;
    };
    py::dict departures;
    for (const auto& d : r.departures) departures[py::str(d.objective.atom)] = d.departures;
    py::dict out;
    out["universe"] = r.universe;
    out["objectives"] = names(r.objectives.all);
    out["positive_objectives"] = names(r.objectives.positive);
    out["negative_objectives"] = names(r.objectives.negative);
    out["departures"] = departures;
    out["basic_stability"] = fraction(r.basic_stability);
    out["instability"] = fraction(r.instability);
    out["total_stability"] = fraction(r.total_stability);
    return out;
}

py::dict experiment_dict(const ExperimentResult& r) {
    py::list summaries, comparisons;
    for (const auto& s : r.summaries)
        summaries.append(py::dict(py::arg("agent") = s.agent, py::arg("kind") = to_string(s.kind),
                                  py::arg("mean") = s.mean, py::arg("median") = s.median, py::arg("min") = s.min,
                                  py::arg("max") = s.max));
    for (const auto& c : r.comparisons)
        comparisons.append(py::dict(py::arg("label") = c.label, py::arg("sensitive_mean") = c.sensitive_mean,
                                    py::arg("other_mean") = c.other_mean, py::arg("u") = c.test.u,
                                    py::arg("z") = c.test.z, py::arg("p") = c.test.p_two_sided));
    py::dict out;
    out["csv"] = experiment_csv(r);
    out["summaries"] = summaries;
    out["comparisons"] = comparisons;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Universes, agent architectures, stability metrics and persistence experiments";

    py::register_exception<Error>(m, "ExoError", PyExc_RuntimeError);

    py::class_<SpecDocument>(m, "Document")
        .def_property_readonly("universes",
                               [](const SpecDocument& d) {
                                   std::vector<std::string> out;
                                   for (const auto& u : d.universes) out.push_back(u.name());
                                   return out;
                               })
        .def_property_readonly("agents",
                               [](const SpecDocument& d) {
                                   std::vector<std::string> out;
                                   for (const auto& a : d.agents) out.push_back(a.name);
                                   return out;
                               })
        .def("agent_kind", [](const SpecDocument& d, const std::string& agent) {
            return std::string(keyword(agent_named(d, agent).architecture.kind));
        })
        .def("serialize", [](const SpecDocument& d) { return serialize(d); })
        .def("__eq__", [](const SpecDocument& a, const SpecDocument& b) { return structurally_equal(a, b); });

    m.def("parse", [](const std::string& text) { return parse_or_raise(parse(text)); }, py::arg("text"),
          "Parse `.exo` text; raises ExoError listing the diagnostics.");
    m.def("parse_file", [](const std::filesystem::path& p) { return parse_or_raise(parse_file(p)); }, py::arg("path"));
    m.def("diagnostics", [](const std::string& text) { return diagnostics(parse(text)); }, py::arg("text"),
          "All diagnostics of a text as dicts (severity, message, line, column).");

    m.def(
        "stability",
        [](const SpecDocument& d, const std::string& agent, std::size_t candidate) {
            const auto& a = agent_named(d, agent);
            return stability_dict(agent_stability(a.architecture, d.universe_of(a), candidate));
        },
        py::arg("document"), py::arg("agent"), py::arg("candidate") = 0,
        "Stability report with exact fractions.Fraction values.");

    m.def(
        "check_oriented",
        [](const SpecDocument& d, const std::string& agent) {
            const auto& a = agent_named(d, agent);
            py::list out;
            for (const auto& v : check_oriented(a.architecture, d.universe_of(a)))
                out.append(py::dict(py::arg("candidate") = v.candidate, py::arg("source") = v.source.atom,
                                    py::arg("goal") = v.goal.atom, py::arg("sequence") = sequence_text(v.sequence),
                                    py::arg("reached") = v.reached));
            return out;
        },
        py::arg("document"), py::arg("agent"));

    m.def(
        "run_trajectory",
        [](const SpecDocument& d, const std::string& agent, std::uint64_t max_steps, std::uint64_t seed) {
            const auto& a = agent_named(d, agent);
            const auto& u = d.universe_of(a);
            auto t = run_trajectory(u, a.architecture, max_steps, seed);
            py::list steps;
            for (const auto& s : t.steps)
                steps.append(py::make_tuple(s.t, u.state_name(s.state_before), u.act_name(s.act),
                                            u.state_name(s.state_after), s.energy_after));
            py::dict out;
            out["persistence"] = t.persistence();
            out["terminal_reason"] = to_string(t.terminal_reason);
            out["steps"] = steps;
            return out;
        },
        py::arg("document"), py::arg("agent"), py::arg("max_steps"), py::arg("seed") = 0,
        "Steps as (t, state, act, next_state, energy) tuples.");

    m.def(
        "run_experiment",
        [](const SpecDocument& d, std::uint64_t runs, std::uint64_t max_steps, std::uint64_t seed, unsigned jobs) {
            ExperimentConfig cfg;
            cfg.runs_per_agent = runs;
            cfg.max_steps = max_steps;
            cfg.master_seed = seed;
            cfg.jobs = jobs;
            ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(d, cfg);
            }
            return experiment_dict(r);
        },
        py::arg("document"), py::arg("runs"), py::arg("max_steps"), py::arg("seed"), py::arg("jobs") = 1);

    m.def("mann_whitney", [](const std::vector<double>& a, const std::vector<double>& b) {
        auto r = mann_whitney(a, b);
        return py::dict(py::arg("u") = r.u, py::arg("z") = r.z, py::arg("p") = r.p_two_sided);
    });

    m.def("logic_table", [] {
        py::list out;
        for (const auto& r : postulate2_table())
            out.append(py::dict(py::arg("case") = r.group + " " + r.label, py::arg("s") = r.input.s,
                                py::arg("r") = r.input.r, py::arg("n") = r.input.n,
                                py::arg("value") = std::string(1, symbol(r.value))));
        return out;
    });
    m.def("render_logic_table", [] { return render_logic_table(postulate2_table()); });

    m.def(
        "constant_digits",
        [](const std::string& constant, unsigned base, std::size_t count) {
            if (constant != "pi" && constant != "e")
                throw Error(ErrorCode::InvalidArgument, "constant must be 'pi' or 'e'");
            auto d = constant_digits(constant == "pi" ? MathConstant::Pi : MathConstant::E, base, count);
            return std::vector<int>(d.begin(), d.end());
        },
        py::arg("constant"), py::arg("base"), py::arg("count"));
}
