#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace nestsim {

// Timer/counter over a chain of nested patterns. An on-switch drives the
// cascade inward one level per tick; each level emits a count as it
// activates. The innermost level signals the off-switch, which cuts the
// drive on the following tick, and the chain is quiescent one tick later.
struct CounterSpec {
    std::size_t depth = 0;
    std::string label;
};

enum class Phase { Idle, Cascading, ShuttingDown, Quiescent };

struct CountEvent {
    std::size_t level = 0; // 1-based, outermost = 1
    std::size_t tick = 0;

    friend bool operator==(const CountEvent&, const CountEvent&) = default;
};

struct CounterState {
    Phase phase = Phase::Idle;
    std::size_t level = 0; // current level while Cascading
    std::size_t tick = 0;
    bool drive_on = true;          // on-switch still feeding the outermost level
    bool off_switch_signalled = false;
    std::vector<CountEvent> emissions;

    friend bool operator==(const CounterState&, const CounterState&) = default;
};

CounterState start(const CounterSpec& spec);

// Quiescent is absorbing: ticking it returns the state unchanged.
CounterState tick(const CounterState& state, const CounterSpec& spec);

struct CounterRun {
    std::vector<CountEvent> events;
    CounterState final_state;
};

CounterRun run_counter(const CounterSpec& spec);

const char* to_string(Phase phase);

} // namespace nestsim
