"""Unwinding a feedback loop into compute cycles, running it, and verifying the result."""
from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Mapping, Optional

from ..core import SQUARE_ORDER, PhysicalState, check_cube
from .dsl import ControlScenario, Epsilons, serialize
from .loops import Loop


def scenario_hash(sc: ControlScenario) -> str:
    return hashlib.sha256(serialize(sc).encode()).hexdigest()


@dataclass(frozen=True)
class CyclePlan:
    """One cell of the unwound loop.

    The plant evolves over [t, t + dt] under the signal produced by cycle
    `input_source` (None: the initial signal), while the controller reads
    y(t) and produces the signal cycle index + 1 will use.
    """
    index: int
    t: float
    input_source: Optional[int]
    plant_params: Mapping[str, float]
    squares: tuple = SQUARE_ORDER


def unwind(sc: ControlScenario) -> list:
    params = {k: v for k, v in sc.plant.params}
    by_cycle = {}
    for d in sc.disturbances:
        by_cycle.setdefault(d.at, []).append(d)
    plans = []
    for i in range(sc.cycles):
        for d in by_cycle.get(i, ()):
            params = {**params, d.param: d.value}
        plans.append(CyclePlan(i, i * sc.dt, None if i == 0 else i - 1, params))
    return plans


class CycleError(RuntimeError):
    def __init__(self, cycle: int, cause: Exception):
        super().__init__(f"cycle {cycle}: {type(cause).__name__}: {cause}")
        self.cycle, self.cause = cycle, cause


@dataclass(frozen=True)
class CycleRecord:
    cycle: int
    t: float
    y: float
    e_or_c: float
    s: float
    plant_state: PhysicalState
    controller_state: PhysicalState
    reports: tuple

    def residual(self, square: str) -> float:
        return self.reports[SQUARE_ORDER.index(square)].residual


@dataclass(frozen=True)
class Verdict:
    passed: bool
    first_failure: Optional[tuple] = None   # (cycle, square)


def _verdict(records, epsilon: Optional[Epsilons] = None) -> Verdict:
    for r in records:
        for rep in r.reports:
            eps = rep.epsilon if epsilon is None else epsilon[rep.square]
            if not rep.residual <= eps:
                return Verdict(False, (r.cycle, rep.square))
    return Verdict(True)


@dataclass(frozen=True)
class Trace:
    name: str
    scenario_hash: str
    scenario: ControlScenario
    records: tuple
    verdict: Verdict

    def column(self, name: str) -> list:
        if name in SQUARE_ORDER:
            return [r.residual(name) for r in self.records]
        return [getattr(r, name) for r in self.records]


def run(sc: ControlScenario) -> Trace:
    loop = Loop.of(sc)
    plant_state, ctl_state, ctl_obj = loop.start()
    out_name, junction, signal = (loop.plant.output_name, loop.controller.junction_name,
                                  loop.controller.output_name)
    records = []
    for plan in unwind(sc):
        try:
            cube, ctl_obj = loop.cube(plan.index, plan.plant_params, plant_state, ctl_state, ctl_obj)
            reports = check_cube(cube)
        except Exception as exc:
            raise CycleError(plan.index, exc) from exc
        enc, ctl, dec, plant = reports
        c_out = ctl.corners.physical_out
        records.append(CycleRecord(plan.index, plan.t, plant_state[out_name], c_out[junction],
                                   c_out[signal], plant_state, c_out, tuple(reports)))
        plant_state = plant.corners.physical_out.merged(dec.corners.physical_out)
        ctl_state = c_out
    records = tuple(records)
    return Trace(sc.name, scenario_hash(sc), sc, records, _verdict(records))


@dataclass(frozen=True)
class SquareSummary:
    passed: int
    total: int
    max_residual: float
    epsilon: float


@dataclass(frozen=True)
class VerificationReport:
    scenario: str
    scenario_hash: str
    squares: Mapping[str, SquareSummary]
    verdict: Verdict
    cycles: int
    # a control loop's output is the plant's final physical state, not an abstract answer
    output_class: str = "control-cycle"

    @property
    def passed(self) -> bool:
        return self.verdict.passed


def verify(trace: Trace, epsilon: Optional[Epsilons] = None) -> VerificationReport:
    """Re-judge every stored residual, optionally against new tolerances."""
    eps = epsilon or trace.scenario.epsilon
    squares = {}
    for k, name in enumerate(SQUARE_ORDER):
        res = [r.reports[k].residual for r in trace.records]
        squares[name] = SquareSummary(sum(1 for x in res if x <= eps[name]), len(res),
                                      max(res, default=0.0), eps[name])
    return VerificationReport(trace.name, trace.scenario_hash, squares,
                              _verdict(trace.records, eps), len(trace.records))


__all__ = ["CyclePlan", "unwind", "CycleRecord", "Trace", "Verdict", "run", "verify",
           "VerificationReport", "SquareSummary", "CycleError", "scenario_hash"]
