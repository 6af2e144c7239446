"""Fixed-step integration of continuous physical evolutions.

States are short float vectors (one or two entries for every plant and
controller here), so the steppers work on plain tuples; numpy is only used
to hand back whole trajectories.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np


class NonFiniteState(ArithmeticError):
    pass


class StepMethod(str, Enum):
    EULER = "euler"
    RK4 = "rk4"


@dataclass(frozen=True)
class VectorField:
    """dx/dt = eval(x, u, t); `eval` must return `dimension` entries."""
    dimension: int
    eval: Callable[[Sequence[float], Sequence[float], float], Sequence[float]]

    def __call__(self, x, u, t):
        dx = self.eval(x, u, t)
        if len(dx) != self.dimension:
            raise ValueError(f"field returned {len(dx)} entries, expected {self.dimension}")
        for v in dx:
            if not math.isfinite(v):
                raise NonFiniteState(f"non-finite derivative {tuple(dx)} at x={tuple(x)}, t={t}")
        return dx


def _axpy(x, a, d):
    return tuple([xi + a * di for xi, di in zip(x, d)])


def _finite_or_raise(x, what: str, t: float) -> None:
    for v in x:
        if not math.isfinite(v):
            raise NonFiniteState(f"non-finite {what} {tuple(x)} at t={t}")


def step(f: VectorField, method: StepMethod, x, u, t: float, dt: float) -> tuple:
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    x = tuple([float(v) for v in x])
    _finite_or_raise(x, "state", t)
    ev, n = f.eval, f.dimension
    # NaN and inf propagate through every stage, so checking the stage
    # derivatives' length and the end point is enough
    if method is StepMethod.EULER:
        k1 = ev(x, u, t)
        if len(k1) != n:
            f(x, u, t)
        out = _axpy(x, dt, k1)
    elif method is StepMethod.RK4:
        h = 0.5 * dt
        k1 = ev(x, u, t)
        if len(k1) != n:
            f(x, u, t)
        k2 = ev(_axpy(x, h, k1), u, t + h)
        k3 = ev(_axpy(x, h, k2), u, t + h)
        k4 = ev(_axpy(x, dt, k3), u, t + dt)
        c = dt / 6.0
        out = tuple([xi + c * (a + 2.0 * b + 2.0 * d + e)
                     for xi, a, b, d, e in zip(x, k1, k2, k3, k4)])
    else:
        raise ValueError(f"unknown step method {method!r}")
    _finite_or_raise(out, "state after step", t + dt)
    return out


def integrate(f: VectorField, method: StepMethod, x0, inputs, dt: float, n: int) -> np.ndarray:
    """Trajectory of n+1 states; inputs[i] is held over [i*dt, (i+1)*dt)."""
    if len(inputs) != n:
        raise ValueError(f"need {n} inputs, got {len(inputs)}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt!r}")
    traj = np.empty((n + 1, f.dimension))
    x = tuple(float(v) for v in x0)
    traj[0] = x
    for i in range(n):
        x = step(f, method, x, inputs[i], i * dt, dt)
        traj[i + 1] = x
    return traj
