#pragma once

#include "nestsim/dynamics.hpp"
#include "nestsim/topology.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nestsim {

// On-disk scenario, kept close to the JSON so that writing and re-parsing a
// document gives back the same value.
struct EnsembleDoc {
    std::string nesting = "linear"; // "linear" or "tree"
    // linear
    std::size_t depth = 0;
    std::size_t pattern_size = 0;
    // tree: explicit pattern list
    std::vector<PatternSpec> patterns;
    double excitatory_unit = 1.0;
    double inhibitory_weight = 0.0;

    friend bool operator==(const EnsembleDoc&, const EnsembleDoc&) = default;
};

struct ScheduleDoc {
    std::string type = "staggered"; // "staggered" or "explicit"
    Step interval = 1;
    std::vector<Step> steps;
    std::optional<Step> drive_until;

    friend bool operator==(const ScheduleDoc&, const ScheduleDoc&) = default;
};

struct ScenarioFile {
    EnsembleDoc ensemble;
    ScheduleDoc schedule;
    std::size_t steps = 1;
    Mode mode = Mode::scheduled;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

struct Scenario {
    EnsembleSpec ensemble;
    Schedule schedule;
    std::size_t steps = 1;
    Mode mode = Mode::scheduled;
};

// Strict: unknown keys and wrong types throw ParseError naming the field.
ScenarioFile parse_scenario_file(std::string_view text);

// Builds and validates the run inputs; throws ValidationError listing every
// topology violation.
Scenario to_scenario(const ScenarioFile& file);

Scenario parse_scenario(std::string_view text);

std::string write_scenario(const ScenarioFile& file);

ScenarioFile standard_scenario_file();

const char* to_string(Mode mode);

// Shortest decimal that parses back to the same double ("7.5", "0").
std::string format_number(double value);

// CSV with header step,neuron,pattern,strength and 1-based indices.
std::string write_trace(const TraceTable& trace);
TraceTable parse_trace(std::string_view text);

// CSV with header neuron,t3,t4,t5 and 25 rows.
GoldenGrid parse_golden(std::string_view text);

// Golden strength fixture (data/table1.csv) compiled into the library.
std::string_view builtin_table1_fixture();

struct Mismatch {
    NeuronIndex neuron = 0; // 0-based
    Step step = 0;
    double expected = 0.0;
    double actual = 0.0;
};

struct GoldenReport {
    double max_abs_error = 0.0;
    std::vector<Mismatch> mismatches;
    bool pass = true;
};

GoldenReport compare_grids(const GoldenGrid& actual, const GoldenGrid& expected, double tolerance);

GoldenReport compare_golden(const TraceTable& trace, const GoldenGrid& fixture, double tolerance);

// "pass max_abs_error=0" or "fail ..." followed by one line per mismatch.
std::string format_report(const GoldenReport& report);

} // namespace nestsim
