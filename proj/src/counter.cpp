#include "nestsim/counter.hpp"

#include "nestsim/error.hpp"

namespace nestsim {

namespace {

void check(const CounterSpec& spec)
{
    if (spec.depth == 0) {
        throw Error(ErrorKind::InvalidDepth, "counter depth must be >= 1");
    }
}

} // namespace

CounterState start(const CounterSpec& spec)
{
    check(spec);
    return CounterState{};
}

CounterState tick(const CounterState& state, const CounterSpec& spec)
{
    if (state.phase == Phase::Quiescent) {
        return state;
    }
    CounterState next = state;
    next.tick = state.tick + 1;

    if (next.tick <= spec.depth) {
        next.phase = Phase::Cascading;
        next.level = next.tick;
        next.emissions.push_back({next.level, next.tick});
        if (next.level == spec.depth) {
            next.off_switch_signalled = true;
        }
    } else if (next.tick == spec.depth + 1) {
        // Off-switch inhibits the on-switch.
        next.phase = Phase::ShuttingDown;
        next.drive_on = false;
    } else {
        next.phase = Phase::Quiescent;
        next.level = 0;
    }
    return next;
}

CounterRun run_counter(const CounterSpec& spec)
{
    CounterState state = start(spec);
    while (state.phase != Phase::Quiescent) {
        state = tick(state, spec);
    }
    return {state.emissions, state};
}

const char* to_string(Phase phase)
{
    switch (phase) {
    case Phase::Idle: return "idle";
    case Phase::Cascading: return "cascading";
    case Phase::ShuttingDown: return "shutting-down";
    case Phase::Quiescent: return "quiescent";
    }
    return "unknown";
}

} // namespace nestsim
