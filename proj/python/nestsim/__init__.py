"""Nested pattern ensemble simulator."""

from ._core import (
    CountEvent,
    EnsembleSpec,
    GoldenReport,
    HopSpec,
    Mode,
    Scenario,
    TraceTable,
    __version__,
    ancestors,
    best_center,
    build_linear,
    builtin_table1_fixture,
    centering_cost,
    centering_costs,
    chain_source_firings,
    compare_golden,
    event_oracle,
    firings_per_hop,
    first_zero_step,
    golden_table,
    layout_trials,
    members,
    parse_golden,
    parse_scenario,
    pattern_strength,
    required_output,
    run,
    run_counter,
    staggered_schedule,
    standard_ensemble,
    stigmergy_reinforce,
    validate,
    verify_table1,
    write_trace,
    NestsimError,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
