#pragma once

#include "nestsim/topology.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

namespace nestsim {

using Step = std::size_t; // 1-based simulation step

enum class Mode { scheduled, free_run };

struct Schedule {
    // First firing step of each pattern, indexed by pattern.
    std::vector<Step> activation_step;
    // Free-run only: root patterns receive external drive on steps <= drive_until.
    // Unset means the drive never stops.
    std::optional<Step> drive_until;

    // Pattern p first fires at 1 + nesting_depth(p) * interval.
    static Schedule staggered(const EnsembleSpec& spec, Step interval = 1);

    bool drive_on(Step t) const noexcept { return !drive_until || t <= *drive_until; }

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

struct SimState {
    Step step = 0;                 // 0 before the first update
    std::vector<double> strength;  // per neuron
    std::vector<bool> active;      // per pattern: fired on `step`
    std::vector<bool> ever_active; // per pattern

    static SimState initial(const EnsembleSpec& spec);
};

struct StepBreakdown {
    std::vector<double> excitatory_in; // per neuron
    std::vector<double> inhibitory_in; // per neuron, already weighted
};

struct StepResult {
    SimState state;
    StepBreakdown breakdown;
};

// One synchronous update. Firing set is decided from `state` (step t-1), then
// every neuron gets strength = max(0, strength + excitatory_in - inhibitory_in).
StepResult step(const SimState& state, const EnsembleSpec& spec, const Schedule& schedule,
                Mode mode);

// Step-major strength matrix; row r holds step r + 1.
class TraceTable {
public:
    TraceTable() = default;
    TraceTable(std::vector<PatternIndex> pattern_of, std::size_t steps);

    std::size_t steps() const noexcept { return steps_; }
    std::size_t neurons() const noexcept { return pattern_of_.size(); }
    const std::vector<PatternIndex>& pattern_of() const noexcept { return pattern_of_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double at(Step t, NeuronIndex neuron) const;
    double& at(Step t, NeuronIndex neuron);

    void append_row(const std::vector<double>& strengths);

    friend bool operator==(const TraceTable&, const TraceTable&) = default;

private:
    std::vector<PatternIndex> pattern_of_;
    std::size_t steps_ = 0;
    std::vector<double> values_;
};

struct DetailedRun {
    TraceTable trace;
    std::vector<StepBreakdown> breakdowns; // one per step
    std::vector<std::vector<bool>> firing; // per step, per pattern
};

TraceTable run(const EnsembleSpec& spec, const Schedule& schedule, std::size_t steps,
               Mode mode = Mode::scheduled);

DetailedRun run_detailed(const EnsembleSpec& spec, const Schedule& schedule, std::size_t steps,
                         Mode mode = Mode::scheduled);

// Common per-neuron strength of a pattern; throws AsymmetricPattern if the
// members disagree.
double pattern_strength(const TraceTable& trace, PatternIndex pattern, Step t);

// Earliest step at which the pattern is back at 0 after having been positive.
std::optional<Step> first_zero_step(const TraceTable& trace, PatternIndex pattern);

inline constexpr std::size_t golden_neurons = 25;
inline constexpr std::array<Step, 3> golden_steps{3, 4, 5};

// Rows are neurons 1..25, columns t = 3, 4, 5.
using GoldenGrid = std::array<std::array<double, golden_steps.size()>, golden_neurons>;

GoldenGrid golden_table(const TraceTable& trace);

// The five-by-five chain with unit excitation, half-weight inhibition and one
// new pattern per step.
EnsembleSpec standard_ensemble();
inline constexpr std::size_t standard_steps = 5;

} // namespace nestsim
