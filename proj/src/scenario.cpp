#include "nestsim/scenario.hpp"

#include "nestsim/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace nestsim {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& what)
{
    throw Error(ErrorKind::ParseError, (path.empty() ? std::string("document") : path) + ": " + what);
}

std::string join(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

void expect_object(const json& j, const std::string& path)
{
    if (!j.is_object()) {
        parse_fail(path, "expected an object");
    }
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    for (const auto& [key, value] : j.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&key](const char* a) { return key == a; });
        if (!known) {
            parse_fail(join(path, key), "unknown key");
        }
    }
}

const json& require(const json& j, const std::string& path, const char* key)
{
    auto it = j.find(key);
    if (it == j.end()) {
        parse_fail(join(path, key), "missing");
    }
    return *it;
}

std::size_t as_count(const json& v, const std::string& path)
{
    if (v.is_number_unsigned()) {
        return v.get<std::size_t>();
    }
    if (v.is_number_integer()) {
        parse_fail(path, "expected a non-negative integer, got " + v.dump());
    }
    parse_fail(path, "expected an integer, got " + v.dump());
}

double as_number(const json& v, const std::string& path)
{
    if (!v.is_number()) {
        parse_fail(path, "expected a number, got " + v.dump());
    }
    return v.get<double>();
}

std::string as_string(const json& v, const std::string& path)
{
    if (!v.is_string()) {
        parse_fail(path, "expected a string, got " + v.dump());
    }
    return v.get<std::string>();
}

EnsembleDoc parse_ensemble(const json& j)
{
    const std::string path = "ensemble";
    expect_object(j, path);
    reject_unknown(j, path,
                   {"nesting", "depth", "pattern_size", "patterns", "excitatory_unit",
                    "inhibitory_weight"});

    EnsembleDoc doc;
    doc.nesting = as_string(require(j, path, "nesting"), join(path, "nesting"));
    doc.excitatory_unit =
        as_number(require(j, path, "excitatory_unit"), join(path, "excitatory_unit"));
    doc.inhibitory_weight =
        as_number(require(j, path, "inhibitory_weight"), join(path, "inhibitory_weight"));

    if (doc.nesting == "linear") {
        if (j.contains("patterns")) {
            parse_fail(join(path, "patterns"), "not allowed with linear nesting");
        }
        doc.depth = as_count(require(j, path, "depth"), join(path, "depth"));
        doc.pattern_size = as_count(require(j, path, "pattern_size"), join(path, "pattern_size"));
    } else if (doc.nesting == "tree") {
        for (const char* key : {"depth", "pattern_size"}) {
            if (j.contains(key)) {
                parse_fail(join(path, key), "not allowed with tree nesting");
            }
        }
        const auto& list = require(j, path, "patterns");
        const auto list_path = join(path, "patterns");
        if (!list.is_array()) {
            parse_fail(list_path, "expected an array");
        }
        for (std::size_t k = 0; k < list.size(); ++k) {
            const auto item_path = list_path + "[" + std::to_string(k) + "]";
            const auto& item = list[k];
            expect_object(item, item_path);
            reject_unknown(item, item_path, {"size", "parent"});
            PatternSpec p;
            p.id = k;
            p.size = as_count(require(item, item_path, "size"), join(item_path, "size"));
            if (auto it = item.find("parent"); it != item.end() && !it->is_null()) {
                p.parent = as_count(*it, join(item_path, "parent"));
            }
            doc.patterns.push_back(p);
        }
    } else {
        parse_fail(join(path, "nesting"), "expected \"linear\" or \"tree\", got \"" + doc.nesting + "\"");
    }
    return doc;
}

ScheduleDoc parse_schedule(const json& j)
{
    const std::string path = "schedule";
    expect_object(j, path);
    reject_unknown(j, path, {"type", "interval", "steps", "drive_until"});

    ScheduleDoc doc;
    doc.type = as_string(require(j, path, "type"), join(path, "type"));
    if (doc.type == "staggered") {
        if (j.contains("steps")) {
            parse_fail(join(path, "steps"), "not allowed with a staggered schedule");
        }
        doc.interval = as_count(require(j, path, "interval"), join(path, "interval"));
    } else if (doc.type == "explicit") {
        if (j.contains("interval")) {
            parse_fail(join(path, "interval"), "not allowed with an explicit schedule");
        }
        const auto& list = require(j, path, "steps");
        if (!list.is_array()) {
            parse_fail(join(path, "steps"), "expected an array");
        }
        for (std::size_t k = 0; k < list.size(); ++k) {
            doc.steps.push_back(as_count(list[k], join(path, "steps") + "[" + std::to_string(k) + "]"));
        }
    } else {
        parse_fail(join(path, "type"), "expected \"staggered\" or \"explicit\", got \"" + doc.type + "\"");
    }
    if (auto it = j.find("drive_until"); it != j.end()) {
        doc.drive_until = as_count(*it, join(path, "drive_until"));
    }
    return doc;
}

[[noreturn]] void invalid(const std::string& what)
{
    throw Error(ErrorKind::ValidationError, what);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string_view> lines_of(std::string_view text)
{
    auto lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty()) {
        lines.pop_back();
    }
    for (auto& line : lines) {
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
    }
    return lines;
}

std::size_t parse_index(std::string_view field, std::size_t line)
{
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line) + ": bad integer '" + std::string(field) + "'");
    }
    return v;
}

double parse_double(std::string_view field, std::size_t line)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

} // namespace

ScenarioFile parse_scenario_file(std::string_view text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
    expect_object(root, "");
    reject_unknown(root, "", {"ensemble", "schedule", "steps", "mode"});

    ScenarioFile file;
    file.ensemble = parse_ensemble(require(root, "", "ensemble"));
    file.schedule = parse_schedule(require(root, "", "schedule"));
    file.steps = as_count(require(root, "", "steps"), "steps");
    const auto mode = as_string(require(root, "", "mode"), "mode");
    if (mode == "scheduled") {
        file.mode = Mode::scheduled;
    } else if (mode == "free_run") {
        file.mode = Mode::free_run;
    } else {
        parse_fail("mode", "expected \"scheduled\" or \"free_run\", got \"" + mode + "\"");
    }
    return file;
}

Scenario to_scenario(const ScenarioFile& file)
{
    const auto& e = file.ensemble;
    Scenario out;
    if (e.nesting == "linear") {
        if (e.depth == 0 || e.pattern_size == 0) {
            invalid("ensemble.depth and ensemble.pattern_size must be >= 1");
        }
        out.ensemble = build_linear(e.depth, e.pattern_size, e.excitatory_unit, e.inhibitory_weight);
    } else {
        out.ensemble.patterns = e.patterns;
        out.ensemble.excitatory_unit = e.excitatory_unit;
        out.ensemble.inhibitory_weight = e.inhibitory_weight;
    }
    if (auto violations = validate(out.ensemble); !violations.empty()) {
        std::string msg;
        for (const auto& v : violations) {
            msg += (msg.empty() ? "" : "; ") + v.message();
        }
        invalid(msg);
    }

    const auto& s = file.schedule;
    if (s.type == "staggered") {
        if (s.interval < 1) {
            invalid("schedule.interval must be >= 1");
        }
        out.schedule = Schedule::staggered(out.ensemble, s.interval);
    } else {
        if (s.steps.size() != out.ensemble.pattern_count()) {
            invalid("schedule.steps has " + std::to_string(s.steps.size()) + " entries for " +
                    std::to_string(out.ensemble.pattern_count()) + " patterns");
        }
        if (std::any_of(s.steps.begin(), s.steps.end(), [](Step t) { return t < 1; })) {
            invalid("schedule.steps entries must be >= 1");
        }
        out.schedule.activation_step = s.steps;
    }
    out.schedule.drive_until = s.drive_until;

    if (file.steps < 1) {
        invalid("steps must be >= 1");
    }
    out.steps = file.steps;
    out.mode = file.mode;
    return out;
}

Scenario parse_scenario(std::string_view text)
{
    return to_scenario(parse_scenario_file(text));
}

std::string write_scenario(const ScenarioFile& file)
{
    ordered_json ensemble;
    ensemble["nesting"] = file.ensemble.nesting;
    if (file.ensemble.nesting == "linear") {
        ensemble["depth"] = file.ensemble.depth;
        ensemble["pattern_size"] = file.ensemble.pattern_size;
    } else {
        ordered_json list = ordered_json::array();
        for (const auto& p : file.ensemble.patterns) {
            ordered_json item;
            item["size"] = p.size;
            if (p.parent) {
                item["parent"] = *p.parent;
            }
            list.push_back(item);
        }
        ensemble["patterns"] = list;
    }
    ensemble["excitatory_unit"] = file.ensemble.excitatory_unit;
    ensemble["inhibitory_weight"] = file.ensemble.inhibitory_weight;

    ordered_json schedule;
    schedule["type"] = file.schedule.type;
    if (file.schedule.type == "staggered") {
        schedule["interval"] = file.schedule.interval;
    } else {
        schedule["steps"] = file.schedule.steps;
    }
    if (file.schedule.drive_until) {
        schedule["drive_until"] = *file.schedule.drive_until;
    }

    ordered_json root;
    root["ensemble"] = ensemble;
    root["schedule"] = schedule;
    root["steps"] = file.steps;
    root["mode"] = to_string(file.mode);
    return root.dump(2) + "\n";
}

ScenarioFile standard_scenario_file()
{
    ScenarioFile file;
    file.ensemble.nesting = "linear";
    file.ensemble.depth = 5;
    file.ensemble.pattern_size = 5;
    file.ensemble.excitatory_unit = 1.0;
    file.ensemble.inhibitory_weight = 0.5;
    file.schedule.type = "staggered";
    file.schedule.interval = 1;
    file.steps = standard_steps;
    file.mode = Mode::scheduled;
    return file;
}

const char* to_string(Mode mode)
{
    return mode == Mode::scheduled ? "scheduled" : "free_run";
}

std::string format_number(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string write_trace(const TraceTable& trace)
{
    std::string out = "step,neuron,pattern,strength\n";
    for (Step t = 1; t <= trace.steps(); ++t) {
        for (NeuronIndex i = 0; i < trace.neurons(); ++i) {
            out += std::to_string(t);
            out += ',';
            out += std::to_string(i + 1);
            out += ',';
            out += std::to_string(trace.pattern_of()[i] + 1);
            out += ',';
            out += format_number(trace.at(t, i));
            out += '\n';
        }
    }
    return out;
}

TraceTable parse_trace(std::string_view text)
{
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != "step,neuron,pattern,strength") {
        throw Error(ErrorKind::ParseError, "line 1: expected header step,neuron,pattern,strength");
    }

    struct Row {
        Step step;
        NeuronIndex neuron;
        PatternIndex pattern;
        double strength;
    };
    std::vector<Row> rows;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto fields = split(lines[k], ',');
        if (fields.size() != 4) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(k + 1) + ": expected 4 fields");
        }
        Row r{parse_index(fields[0], k + 1), parse_index(fields[1], k + 1),
              parse_index(fields[2], k + 1), parse_double(fields[3], k + 1)};
        if (r.step < 1 || r.neuron < 1 || r.pattern < 1) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(k + 1) + ": indices are 1-based");
        }
        rows.push_back(r);
    }
    if (rows.empty()) {
        return TraceTable{};
    }

    std::size_t neurons = 0;
    while (neurons < rows.size() && rows[neurons].step == 1) {
        ++neurons;
    }
    if (rows.size() % neurons != 0) {
        throw Error(ErrorKind::WrongShape, "trace is not rectangular");
    }
    std::vector<PatternIndex> pattern_of;
    for (std::size_t i = 0; i < neurons; ++i) {
        pattern_of.push_back(rows[i].pattern - 1);
    }
    const std::size_t steps = rows.size() / neurons;
    TraceTable trace(std::move(pattern_of), steps);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const Step t = k / neurons + 1;
        const NeuronIndex i = k % neurons;
        const auto& r = rows[k];
        if (r.step != t || r.neuron != i + 1 || r.pattern != trace.pattern_of()[i] + 1) {
            throw Error(ErrorKind::WrongShape, "line " + std::to_string(k + 2) +
                                                   ": expected step " + std::to_string(t) +
                                                   ", neuron " + std::to_string(i + 1));
        }
        trace.at(t, i) = r.strength;
    }
    return trace;
}

GoldenGrid parse_golden(std::string_view text)
{
    const auto lines = lines_of(text);
    if (lines.empty() || lines.front() != "neuron,t3,t4,t5") {
        throw Error(ErrorKind::ParseError, "line 1: expected header neuron,t3,t4,t5");
    }
    if (lines.size() != golden_neurons + 1) {
        throw Error(ErrorKind::WrongShape, "expected " + std::to_string(golden_neurons) +
                                               " rows, got " + std::to_string(lines.size() - 1));
    }
    GoldenGrid grid{};
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto fields = split(lines[k], ',');
        if (fields.size() != 1 + golden_steps.size()) {
            throw Error(ErrorKind::WrongShape, "line " + std::to_string(k + 1) + ": expected 4 fields");
        }
        if (parse_index(fields[0], k + 1) != k) {
            throw Error(ErrorKind::WrongShape,
                        "line " + std::to_string(k + 1) + ": expected neuron " + std::to_string(k));
        }
        for (std::size_t c = 0; c < golden_steps.size(); ++c) {
            grid[k - 1][c] = parse_double(fields[c + 1], k + 1);
        }
    }
    return grid;
}

GoldenReport compare_grids(const GoldenGrid& actual, const GoldenGrid& expected, double tolerance)
{
    GoldenReport report;
    for (NeuronIndex i = 0; i < golden_neurons; ++i) {
        for (std::size_t c = 0; c < golden_steps.size(); ++c) {
            const double diff = std::abs(actual[i][c] - expected[i][c]);
            // NaN compares false everywhere; count it as a mismatch.
            if (!(diff <= tolerance)) {
                report.mismatches.push_back({i, golden_steps[c], expected[i][c], actual[i][c]});
            }
            if (std::isnan(diff)) {
                report.max_abs_error = std::numeric_limits<double>::infinity();
            } else {
                report.max_abs_error = std::max(report.max_abs_error, diff);
            }
        }
    }
    report.pass = report.mismatches.empty();
    return report;
}

GoldenReport compare_golden(const TraceTable& trace, const GoldenGrid& fixture, double tolerance)
{
    return compare_grids(golden_table(trace), fixture, tolerance);
}

std::string format_report(const GoldenReport& report)
{
    std::ostringstream os;
    os << (report.pass ? "pass" : "fail") << " max_abs_error=" << format_number(report.max_abs_error);
    if (!report.pass) {
        os << " mismatches=" << report.mismatches.size();
    }
    os << '\n';
    for (const auto& m : report.mismatches) {
        os << "mismatch neuron=" << m.neuron + 1 << " t=" << m.step
           << " expected=" << format_number(m.expected) << " actual=" << format_number(m.actual)
           << '\n';
    }
    return os.str();
}

} // namespace nestsim
