#include "nestsim/dynamics.hpp"

#include "nestsim/error.hpp"

#include <algorithm>
#include <string>

namespace nestsim {

namespace {

void check_dimensions(const SimState& state, const EnsembleSpec& spec, const Schedule& schedule)
{
    const auto n = spec.neuron_count();
    const auto p = spec.pattern_count();
    if (state.strength.size() != n || state.active.size() != p || state.ever_active.size() != p) {
        throw Error(ErrorKind::SpecMismatch, "state has " + std::to_string(state.strength.size()) +
                                                 " neurons / " + std::to_string(state.active.size()) +
                                                 " patterns, spec has " + std::to_string(n) + " / " +
                                                 std::to_string(p));
    }
    if (schedule.activation_step.size() != p) {
        throw Error(ErrorKind::SpecMismatch,
                    "schedule covers " + std::to_string(schedule.activation_step.size()) +
                        " patterns, spec has " + std::to_string(p));
    }
}

void check_runnable(const EnsembleSpec& spec, const Schedule& schedule)
{
    auto violations = validate(spec);
    if (!violations.empty()) {
        std::string msg;
        for (const auto& v : violations) {
            msg += (msg.empty() ? "" : "; ") + v.message();
        }
        throw Error(ErrorKind::ValidationError, msg);
    }
    if (schedule.activation_step.size() != spec.pattern_count()) {
        throw Error(ErrorKind::SpecMismatch, "schedule length does not match pattern count");
    }
    for (std::size_t p = 0; p < schedule.activation_step.size(); ++p) {
        if (schedule.activation_step[p] < 1) {
            throw Error(ErrorKind::ValidationError,
                        "pattern " + std::to_string(p) + ": activation step must be >= 1");
        }
    }
}

// Scheduled mode fires everything past its activation step. Free-run also
// requires the pattern to still be alive and its parent (or the external
// drive, for roots) to have fired on the previous step.
std::vector<bool> firing_set(const SimState& state, const EnsembleSpec& spec,
                             const Schedule& schedule, Mode mode, Step t)
{
    const auto count = spec.pattern_count();
    std::vector<bool> fires(count, false);
    for (PatternIndex p = 0; p < count; ++p) {
        if (t < schedule.activation_step[p]) {
            continue;
        }
        if (mode == Mode::scheduled) {
            fires[p] = true;
            continue;
        }
        const NeuronIndex probe = spec.first_neuron(p);
        const bool alive = !state.ever_active[p] || state.strength[probe] > 0.0;
        const auto& parent = spec.patterns[p].parent;
        const bool driven = parent ? static_cast<bool>(state.active[*parent]) : schedule.drive_on(t);
        fires[p] = alive && driven;
    }
    return fires;
}

} // namespace

Schedule Schedule::staggered(const EnsembleSpec& spec, Step interval)
{
    if (interval < 1) {
        throw Error(ErrorKind::InvalidDimension, "stagger interval must be >= 1");
    }
    Schedule schedule;
    schedule.activation_step.reserve(spec.pattern_count());
    for (PatternIndex p = 0; p < spec.pattern_count(); ++p) {
        schedule.activation_step.push_back(1 + nesting_depth(spec, p) * interval);
    }
    return schedule;
}

SimState SimState::initial(const EnsembleSpec& spec)
{
    SimState s;
    s.strength.assign(spec.neuron_count(), 0.0);
    s.active.assign(spec.pattern_count(), false);
    s.ever_active.assign(spec.pattern_count(), false);
    return s;
}

StepResult step(const SimState& state, const EnsembleSpec& spec, const Schedule& schedule,
                Mode mode)
{
    check_dimensions(state, spec, schedule);

    const Step t = state.step + 1;
    const auto fires = firing_set(state, spec, schedule, mode, t);
    const auto n = spec.neuron_count();
    const double unit = spec.excitatory_unit;
    const double weight = spec.inhibitory_weight;

    StepResult out;
    out.breakdown.excitatory_in.assign(n, 0.0);
    out.breakdown.inhibitory_in.assign(n, 0.0);

    for (PatternIndex q = 0; q < spec.pattern_count(); ++q) {
        if (!fires[q]) {
            continue;
        }
        const double pattern_total = unit * static_cast<double>(spec.patterns[q].size);
        for (NeuronIndex i : members(spec, q)) {
            out.breakdown.excitatory_in[i] += pattern_total;
        }
        for (PatternIndex a : ancestors(spec, q)) {
            for (NeuronIndex i : members(spec, a)) {
                out.breakdown.inhibitory_in[i] += weight * pattern_total;
            }
        }
    }

    out.state.step = t;
    out.state.strength.resize(n);
    for (NeuronIndex i = 0; i < n; ++i) {
        const double next =
            state.strength[i] + out.breakdown.excitatory_in[i] - out.breakdown.inhibitory_in[i];
        out.state.strength[i] = std::max(0.0, next);
    }
    out.state.active = fires;
    out.state.ever_active = state.ever_active;
    for (PatternIndex p = 0; p < fires.size(); ++p) {
        if (fires[p]) {
            out.state.ever_active[p] = true;
        }
    }
    return out;
}

TraceTable::TraceTable(std::vector<PatternIndex> pattern_of, std::size_t steps)
    : pattern_of_(std::move(pattern_of)), steps_(steps), values_(steps * pattern_of_.size(), 0.0)
{}

double TraceTable::at(Step t, NeuronIndex neuron) const
{
    if (t < 1 || t > steps_ || neuron >= neurons()) {
        throw Error(ErrorKind::OutOfRange,
                    "step " + std::to_string(t) + ", neuron " + std::to_string(neuron));
    }
    return values_[(t - 1) * neurons() + neuron];
}

double& TraceTable::at(Step t, NeuronIndex neuron)
{
    if (t < 1 || t > steps_ || neuron >= neurons()) {
        throw Error(ErrorKind::OutOfRange,
                    "step " + std::to_string(t) + ", neuron " + std::to_string(neuron));
    }
    return values_[(t - 1) * neurons() + neuron];
}

void TraceTable::append_row(const std::vector<double>& strengths)
{
    if (strengths.size() != neurons()) {
        throw Error(ErrorKind::WrongShape, "row has " + std::to_string(strengths.size()) +
                                               " values, trace has " + std::to_string(neurons()) +
                                               " neurons");
    }
    values_.insert(values_.end(), strengths.begin(), strengths.end());
    ++steps_;
}

DetailedRun run_detailed(const EnsembleSpec& spec, const Schedule& schedule, std::size_t steps,
                         Mode mode)
{
    if (steps < 1) {
        throw Error(ErrorKind::InvalidDimension, "steps must be >= 1");
    }
    check_runnable(spec, schedule);

    std::vector<PatternIndex> pattern_of(spec.neuron_count());
    for (PatternIndex p = 0; p < spec.pattern_count(); ++p) {
        for (NeuronIndex i : members(spec, p)) {
            pattern_of[i] = p;
        }
    }

    DetailedRun out{TraceTable(std::move(pattern_of), 0), {}, {}};
    out.breakdowns.reserve(steps);
    out.firing.reserve(steps);
    SimState state = SimState::initial(spec);
    for (std::size_t k = 0; k < steps; ++k) {
        auto result = step(state, spec, schedule, mode);
        state = std::move(result.state);
        out.trace.append_row(state.strength);
        out.breakdowns.push_back(std::move(result.breakdown));
        out.firing.push_back(state.active);
    }
    return out;
}

TraceTable run(const EnsembleSpec& spec, const Schedule& schedule, std::size_t steps, Mode mode)
{
    return run_detailed(spec, schedule, steps, mode).trace;
}

double pattern_strength(const TraceTable& trace, PatternIndex pattern, Step t)
{
    if (t < 1 || t > trace.steps()) {
        throw Error(ErrorKind::OutOfRange, "step " + std::to_string(t));
    }
    std::optional<double> common;
    for (NeuronIndex i = 0; i < trace.neurons(); ++i) {
        if (trace.pattern_of()[i] != pattern) {
            continue;
        }
        const double v = trace.at(t, i);
        if (!common) {
            common = v;
        } else if (*common != v) {
            throw Error(ErrorKind::AsymmetricPattern,
                        "pattern " + std::to_string(pattern) + " at step " + std::to_string(t));
        }
    }
    if (!common) {
        throw Error(ErrorKind::OutOfRange, "pattern " + std::to_string(pattern));
    }
    return *common;
}

std::optional<Step> first_zero_step(const TraceTable& trace, PatternIndex pattern)
{
    bool seen_positive = false;
    for (Step t = 1; t <= trace.steps(); ++t) {
        const double v = pattern_strength(trace, pattern, t);
        if (v > 0.0) {
            seen_positive = true;
        } else if (seen_positive) {
            return t;
        }
    }
    if (trace.steps() == 0) {
        // No rows to probe membership with; still reject unknown patterns.
        const auto& of = trace.pattern_of();
        if (std::find(of.begin(), of.end(), pattern) == of.end()) {
            throw Error(ErrorKind::OutOfRange, "pattern " + std::to_string(pattern));
        }
    }
    return std::nullopt;
}

GoldenGrid golden_table(const TraceTable& trace)
{
    if (trace.neurons() != golden_neurons || trace.steps() < golden_steps.back()) {
        throw Error(ErrorKind::WrongShape, "need " + std::to_string(golden_neurons) +
                                               " neurons and >= " +
                                               std::to_string(golden_steps.back()) + " steps, got " +
                                               std::to_string(trace.neurons()) + " x " +
                                               std::to_string(trace.steps()));
    }
    GoldenGrid grid{};
    for (NeuronIndex i = 0; i < golden_neurons; ++i) {
        for (std::size_t c = 0; c < golden_steps.size(); ++c) {
            grid[i][c] = trace.at(golden_steps[c], i);
        }
    }
    return grid;
}

EnsembleSpec standard_ensemble()
{
    return build_linear(5, 5, 1.0, 0.5);
}

} // namespace nestsim
