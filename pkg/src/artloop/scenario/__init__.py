"""Scenario language, loop unwinding and trace verification."""
from .builtins import BUILTINS, builtin_source, load_builtin
from .dsl import (
    ComponentSpec, ControlScenario, Disturbance, Epsilons, ParseError, ValidationError,
    apply_overrides, parse_raw, parse_scenario, serialize,
)
from .harness import (
    CycleError, CyclePlan, CycleRecord, SquareSummary, Trace, VerificationReport, Verdict,
    run, scenario_hash, unwind, verify,
)
from .loops import Loop

__all__ = [
    "BUILTINS", "builtin_source", "load_builtin",
    "ComponentSpec", "ControlScenario", "Disturbance", "Epsilons", "ParseError", "ValidationError",
    "apply_overrides", "parse_raw", "parse_scenario", "serialize",
    "CycleError", "CyclePlan", "CycleRecord", "SquareSummary", "Trace", "VerificationReport",
    "Verdict", "run", "scenario_hash", "unwind", "verify", "Loop",
]
