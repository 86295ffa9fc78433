#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nestsim/counter.hpp"
#include "nestsim/dynamics.hpp"
#include "nestsim/energy.hpp"
#include "nestsim/error.hpp"
#include "nestsim/scenario.hpp"
#include "nestsim/topology.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace nestsim;

namespace {

using PatternTuple = std::pair<std::size_t, std::optional<PatternIndex>>;

EnsembleSpec make_ensemble(const std::vector<PatternTuple>& patterns, double excitatory_unit,
                           double inhibitory_weight)
{
    EnsembleSpec spec;
    spec.excitatory_unit = excitatory_unit;
    spec.inhibitory_weight = inhibitory_weight;
    for (std::size_t p = 0; p < patterns.size(); ++p) {
        spec.patterns.push_back({p, patterns[p].second, patterns[p].first});
    }
    return spec;
}

Schedule make_schedule(const EnsembleSpec& spec, const std::optional<std::vector<Step>>& steps,
                       std::optional<Step> drive_until)
{
    Schedule schedule = steps ? Schedule{*steps, std::nullopt} : Schedule::staggered(spec);
    schedule.drive_until = drive_until;
    return schedule;
}

std::vector<std::vector<double>> rows_of(const TraceTable& trace)
{
    std::vector<std::vector<double>> rows;
    for (Step t = 1; t <= trace.steps(); ++t) {
        std::vector<double> row;
        for (NeuronIndex i = 0; i < trace.neurons(); ++i) {
            row.push_back(trace.at(t, i));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Discrete-time nested pattern ensembles, nested counters and chain energy costs.";

    py::register_exception<Error>(m, "NestsimError");

    py::enum_<Mode>(m, "Mode")
        .value("scheduled", Mode::scheduled)
        .value("free_run", Mode::free_run);

    py::class_<EnsembleSpec>(m, "EnsembleSpec")
        .def(py::init(&make_ensemble), py::arg("patterns"), py::arg("excitatory_unit") = 1.0,
             py::arg("inhibitory_weight") = 0.0,
             "patterns: list of (size, parent or None), outermost-first indexing.")
        .def_property_readonly("pattern_count", &EnsembleSpec::pattern_count)
        .def_property_readonly("neuron_count", &EnsembleSpec::neuron_count)
        .def_readonly("excitatory_unit", &EnsembleSpec::excitatory_unit)
        .def_readonly("inhibitory_weight", &EnsembleSpec::inhibitory_weight)
        .def_property_readonly("patterns",
                               [](const EnsembleSpec& s) {
                                   std::vector<PatternTuple> out;
                                   for (const auto& p : s.patterns) {
                                       out.emplace_back(p.size, p.parent);
                                   }
                                   return out;
                               })
        .def("__eq__", [](const EnsembleSpec& a, const EnsembleSpec& b) { return a == b; });

    m.def("build_linear", &build_linear, py::arg("depth"), py::arg("size"),
          py::arg("excitatory_unit"), py::arg("inhibitory_weight"));
    m.def("standard_ensemble", &standard_ensemble);
    m.def("ancestors", &ancestors, py::arg("spec"), py::arg("pattern"));
    m.def("members", &members, py::arg("spec"), py::arg("pattern"));
    m.def(
        "validate",
        [](const EnsembleSpec& spec) {
            std::vector<std::string> out;
            for (const auto& v : validate(spec)) {
                out.push_back(v.message());
            }
            return out;
        },
        py::arg("spec"), "List of violation messages; empty when valid.");

    py::class_<TraceTable>(m, "TraceTable")
        .def_property_readonly("steps", &TraceTable::steps)
        .def_property_readonly("neurons", &TraceTable::neurons)
        .def_property_readonly("pattern_of", &TraceTable::pattern_of)
        .def_property_readonly("values", &rows_of, "Row t-1 holds strengths after step t.")
        .def("at", py::overload_cast<Step, NeuronIndex>(&TraceTable::at, py::const_),
             py::arg("t"), py::arg("neuron"))
        .def("__eq__", [](const TraceTable& a, const TraceTable& b) { return a == b; });

    m.def(
        "staggered_schedule",
        [](const EnsembleSpec& spec, Step interval) {
            return Schedule::staggered(spec, interval).activation_step;
        },
        py::arg("spec"), py::arg("interval") = 1);
    m.def(
        "run",
        [](const EnsembleSpec& spec, std::size_t steps,
           const std::optional<std::vector<Step>>& schedule, Mode mode,
           std::optional<Step> drive_until) {
            return run(spec, make_schedule(spec, schedule, drive_until), steps, mode);
        },
        py::arg("spec"), py::arg("steps"), py::arg("schedule") = py::none(),
        py::arg("mode") = Mode::scheduled, py::arg("drive_until") = py::none(),
        "Simulate from the all-zero state. schedule defaults to one new pattern per step.");
    m.def("pattern_strength", &pattern_strength, py::arg("trace"), py::arg("pattern"), py::arg("t"));
    m.def("first_zero_step", &first_zero_step, py::arg("trace"), py::arg("pattern"));
    m.def("golden_table", &golden_table, py::arg("trace"));

    py::class_<CountEvent>(m, "CountEvent")
        .def_readonly("level", &CountEvent::level)
        .def_readonly("tick", &CountEvent::tick)
        .def("__repr__", [](const CountEvent& e) {
            return "CountEvent(level=" + std::to_string(e.level) + ", tick=" + std::to_string(e.tick) +
                   ")";
        });
    m.def(
        "run_counter",
        [](std::size_t depth) {
            const auto r = run_counter({depth, {}});
            return py::make_tuple(r.events, r.final_state.tick, to_string(r.final_state.phase));
        },
        py::arg("depth"), "Returns (events, final_tick, final_phase).");

    py::class_<HopSpec>(m, "HopSpec")
        .def(py::init([](double distance, double attenuation, double threshold, double impulse) {
                 return HopSpec{distance, attenuation, threshold, impulse};
             }),
             py::arg("distance") = 0.0, py::arg("attenuation") = 0.0, py::arg("threshold") = 1.0,
             py::arg("impulse") = 1.0)
        .def_readwrite("distance", &HopSpec::distance)
        .def_readwrite("attenuation", &HopSpec::attenuation)
        .def_readwrite("threshold", &HopSpec::threshold)
        .def_readwrite("impulse", &HopSpec::impulse);

    m.def("required_output", &required_output, py::arg("hop"), py::arg("downstream_demand"));
    m.def("firings_per_hop", &firings_per_hop, py::arg("hop"));
    m.def(
        "chain_source_firings",
        [](const std::vector<Count>& weights) { return chain_source_firings({weights}); },
        py::arg("weights"));
    m.def(
        "event_oracle",
        [](const std::vector<HopSpec>& hops) { return event_oracle({hops}); }, py::arg("hops"));
    m.def(
        "event_oracle",
        [](const std::vector<Count>& weights) { return event_oracle(chain_from_weights({weights})); },
        py::arg("weights"));
    m.def(
        "centering_cost",
        [](const std::vector<Count>& weights, std::size_t position) {
            return centering_cost({weights}, position);
        },
        py::arg("weights"), py::arg("position"));
    m.def(
        "centering_costs", [](const std::vector<Count>& weights) { return centering_costs({weights}); },
        py::arg("weights"));
    m.def(
        "best_center", [](const std::vector<Count>& weights) { return best_center({weights}); },
        py::arg("weights"));
    m.def(
        "layout_trials",
        [](std::uint64_t seed, std::size_t trials) {
            std::vector<std::pair<double, double>> out;
            for (const auto& t : layout_trials(seed, trials)) {
                out.emplace_back(t.distances.inward, t.distances.outward);
            }
            return out;
        },
        py::arg("seed"), py::arg("trials"), "List of (inward, outward) terminal distances.");
    m.def(
        "stigmergy_reinforce",
        [](const std::vector<double>& lengths, std::size_t cycles, double energy_per_cycle) {
            RouteSet routes;
            for (double len : lengths) {
                routes.routes.push_back({len, 0.0});
            }
            std::vector<double> out;
            for (const auto& r : stigmergy_reinforce(routes, cycles, energy_per_cycle).routes) {
                out.push_back(r.reinforcement);
            }
            return out;
        },
        py::arg("lengths"), py::arg("cycles"), py::arg("energy_per_cycle"));

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("ensemble", &Scenario::ensemble)
        .def_property_readonly("activation_steps",
                               [](const Scenario& s) { return s.schedule.activation_step; })
        .def_readonly("steps", &Scenario::steps)
        .def_readonly("mode", &Scenario::mode)
        .def("run", [](const Scenario& s) { return run(s.ensemble, s.schedule, s.steps, s.mode); });
    m.def("parse_scenario", &parse_scenario, py::arg("text"));
    m.def("write_trace", &write_trace, py::arg("trace"));

    py::class_<GoldenReport>(m, "GoldenReport")
        .def_readonly("passed", &GoldenReport::pass)
        .def_readonly("max_abs_error", &GoldenReport::max_abs_error)
        .def_property_readonly("mismatch_count",
                               [](const GoldenReport& r) { return r.mismatches.size(); })
        .def("__str__", &format_report);
    m.def("builtin_table1_fixture", [] { return std::string(builtin_table1_fixture()); });
    m.def("parse_golden", &parse_golden, py::arg("text"));
    m.def("compare_golden", &compare_golden, py::arg("trace"), py::arg("fixture"),
          py::arg("tolerance") = 1e-9);
    m.def(
        "verify_table1",
        [](double tolerance) {
            const auto spec = standard_ensemble();
            const auto trace = run(spec, Schedule::staggered(spec), standard_steps);
            return compare_golden(trace, parse_golden(builtin_table1_fixture()), tolerance);
        },
        py::arg("tolerance") = 1e-9);

#ifdef VERSION_INFO
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
