"""Controller models: physical evolutions and the abstract decisions they implement.

Every controller here is an immutable value; a decision returns the signal
together with the updated controller.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, replace
from enum import Enum
from typing import Union

from .core import BitWord
from .dynamics import StepMethod, VectorField, step
from .plants import clamp


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _finite(name: str, v: float) -> None:
    _require(math.isfinite(v), f"{name} must be finite, got {v!r}")


# -- junctions ------------------------------------------------------------------

class Topology(str, Enum):
    SERIAL = "serial"
    PARALLEL = "parallel"


def summing_junction(topology: Topology, r: float, feedback: float) -> float:
    """r - feedback: the error e (serial) or the signal s (parallel)."""
    Topology(topology)
    return r - feedback


@dataclass(frozen=True)
class SerialJunction:
    r: float

    def __post_init__(self):
        _finite("r", self.r)

    def __call__(self, y: float) -> float:
        return summing_junction(Topology.SERIAL, self.r, y)


@dataclass(frozen=True)
class ParallelJunction:
    r: float

    def __post_init__(self):
        _finite("r", self.r)

    def __call__(self, c: float) -> float:
        return summing_junction(Topology.PARALLEL, self.r, c)


# -- bang-bang ------------------------------------------------------------------

@dataclass(frozen=True)
class BangBangController:
    T_re: float
    h: float
    u: bool = False

    def __post_init__(self):
        _require(self.h >= 0, f"hysteresis h must be non-negative, got {self.h}")


def bangbang_decide(ctl: BangBangController, T: float):
    """Switch on below T_re - h, off above T_re + h, otherwise hold."""
    _finite("T", T)
    if T < ctl.T_re - ctl.h:
        u = True
    elif T > ctl.T_re + ctl.h:
        u = False
    else:
        u = ctl.u
    return u, (ctl if u == ctl.u else replace(ctl, u=u))


# -- proportional ---------------------------------------------------------------

@dataclass(frozen=True)
class ProportionalController:
    gain: float
    out_min: float = 0.0
    out_max: float = 1.0

    def __post_init__(self):
        _finite("gain", self.gain)
        _require(self.out_min <= self.out_max,
                 f"out_min {self.out_min} exceeds out_max {self.out_max}")


def proportional_decide(ctl: ProportionalController, e: float) -> float:
    _finite("e", e)
    return clamp(ctl.gain * e, ctl.out_min, ctl.out_max)


# -- bimetallic coil ------------------------------------------------------------

CONTACT_TOL = 1e-6  # metres


@dataclass(frozen=True)
class BimetalCoil:
    """A coil whose free end moves alpha metres per kelvin and closes a contact at x_re.

    With `release_gap > 0` the closed contact latches (a small magnet holds it)
    until the free end has moved `release_gap` past the closing point.
    """
    T_ref_cal: float
    x_at_cal: float
    alpha: float
    x_re: float
    release_gap: float = 0.0
    latched: bool = False

    def __post_init__(self):
        _require(self.alpha > 0, f"alpha must be positive, got {self.alpha}")
        _require(self.release_gap >= 0, f"release_gap must be non-negative, got {self.release_gap}")

    def free_position(self, T: float) -> float:
        return self.x_at_cal + self.alpha * (T - self.T_ref_cal)


def matched_contact_position(T_on: float, T_ref_cal: float, x_at_cal: float, alpha: float) -> float:
    """Contact position that closes exactly when T falls to T_on."""
    return x_at_cal + alpha * (T_on - T_ref_cal) - CONTACT_TOL


def bimetal_decide(ctl: BimetalCoil, T: float):
    """Returns (contact, x, updated coil); x is floored at the contact."""
    _finite("T", T)
    x_free = ctl.free_position(T)
    close_at = ctl.x_re + CONTACT_TOL
    if ctl.latched:
        contact = x_free <= close_at + ctl.release_gap
    else:
        contact = x_free <= close_at
    coil = ctl if contact == ctl.latched else replace(ctl, latched=contact)
    return contact, max(x_free, ctl.x_re), coil


# -- centrifugal governor -------------------------------------------------------

THETA_MAX = math.pi / 2 - 1e-6


@dataclass(frozen=True)
class GovernorController:
    theta: float
    theta_dot: float
    l1: float
    beta: float
    c0: float
    c1: float
    x_re: float
    valve_gain: float
    v0: float
    g: float = 9.81

    def __post_init__(self):
        _require(0.0 <= self.theta < math.pi / 2, f"theta must lie in [0, pi/2), got {self.theta}")
        _require(self.l1 > 0, f"l1 must be positive, got {self.l1}")
        _require(self.beta >= 0, f"beta must be non-negative, got {self.beta}")
        _require(self.c1 < 0, f"c1 must be negative so the collar rises with speed, got {self.c1}")
        _require(self.g > 0, f"g must be positive, got {self.g}")

    @property
    def collar(self) -> float:
        return collar_height(self, self.theta)


def collar_height(ctl: GovernorController, theta: float) -> float:
    return ctl.c0 + ctl.c1 * math.cos(theta)


def valve_command(ctl: GovernorController, x: float) -> float:
    return clamp(ctl.v0 + ctl.valve_gain * (ctl.x_re - x), 0.0, 1.0)


def reference_speed(ctl: GovernorController) -> float:
    """Shaft speed whose settled collar height equals x_re."""
    cos_t = (ctl.x_re - ctl.c0) / ctl.c1
    _require(0.0 < cos_t < 1.0, f"x_re={ctl.x_re} is outside the collar's supercritical range")
    return math.sqrt(ctl.g / (ctl.l1 * cos_t))


def governor_field(ctl: GovernorController) -> VectorField:
    k, beta = ctl.g / ctl.l1, ctl.beta

    def f(x, u, t):
        th, thd = x
        w = u[0]
        s = math.sin(th)
        return (thd, w * w * s * math.cos(th) - k * s - beta * thd)

    return VectorField(2, f)


def _clamp_arm(theta: float, theta_dot: float):
    if theta <= 0.0:
        return 0.0, max(theta_dot, 0.0)
    if theta >= THETA_MAX:
        return THETA_MAX, min(theta_dot, 0.0)
    return theta, theta_dot


def governor_step(ctl: GovernorController, omega: float, dt: float, method: StepMethod):
    """One integration step of the arms at shaft speed omega; returns (valve_cmd, ctl)."""
    _require(omega >= 0, f"omega must be non-negative, got {omega}")
    th, thd = step(governor_field(ctl), method, (ctl.theta, ctl.theta_dot), (omega,), 0.0, dt)
    th, thd = _clamp_arm(th, thd)
    nxt = replace(ctl, theta=th, theta_dot=thd)
    return valve_command(nxt, collar_height(nxt, th)), nxt


def governor_abstract_step(theta: float, theta_dot: float, omega: float, dt: float,
                           params: GovernorController, substeps: int = 4):
    """Reference flow of the arm equation: RK4 on `substeps` sub-intervals of dt."""
    _require(substeps >= 1, f"substeps must be positive, got {substeps}")
    f = governor_field(params)
    h = dt / substeps
    x = (theta, theta_dot)
    for _ in range(substeps):
        x = _clamp_arm(*step(f, StepMethod.RK4, x, (omega,), 0.0, h))
    return x


# -- human operator -------------------------------------------------------------

def round_half_away(v: float) -> int:
    return int(math.floor(abs(v) + 0.5)) * (1 if v >= 0 else -1)


def _detents(v: float, quantum: float, what: str) -> int:
    n = round(v / quantum)
    _require(abs(n * quantum - v) <= 1e-9 * max(1.0, abs(v)),
             f"{what}={v} is not a whole number of quanta ({quantum})")
    return n


@dataclass(frozen=True)
class HumanPolicy:
    """An operator who turns a detented knob in response to errors felt `delay` cycles ago.

    The knob sits on a whole number of detents; `phi` is that count times `quantum`.
    """
    T_re: float
    k_h: float
    quantum: float
    delay: int
    phi_max: float
    detent: int = 0
    queue: tuple = ()

    def __post_init__(self):
        _require(self.quantum > 0, f"quantum must be positive, got {self.quantum}")
        _require(self.delay >= 0 and int(self.delay) == self.delay,
                 f"delay must be a non-negative whole number, got {self.delay}")
        _require(self.phi_max >= 0, f"phi_max must be non-negative, got {self.phi_max}")
        _require(0 <= self.detent <= self.max_detent,
                 f"knob detent {self.detent} outside [0, {self.max_detent}]")
        _require(len(self.queue) <= self.delay, "more queued errors than the delay allows")

    @classmethod
    def at_angle(cls, T_re, k_h, quantum, delay, phi_max, phi0=0.0) -> "HumanPolicy":
        return cls(T_re, k_h, quantum, int(delay), phi_max, _detents(phi0, quantum, "phi0"))

    @property
    def max_detent(self) -> int:
        return _detents(self.phi_max, self.quantum, "phi_max")

    @property
    def phi(self) -> float:
        return self.detent * self.quantum


def human_policy_decide(ctl: HumanPolicy, T: float):
    """Queue e = T_re - T and act on the error sensed `delay` cycles ago."""
    _finite("T", T)
    pending = deque(ctl.queue)
    pending.append(ctl.T_re - T)
    if len(pending) <= ctl.delay:
        nxt = replace(ctl, queue=tuple(pending))
        return nxt.phi, nxt
    e = pending.popleft()
    n = min(max(ctl.detent + round_half_away(ctl.k_h * e / ctl.quantum), 0), ctl.max_detent)
    nxt = replace(ctl, detent=n, queue=tuple(pending))
    return nxt.phi, nxt


# -- parity ---------------------------------------------------------------------

class Signal(str, Enum):
    CONTINUE = "continue"
    RESET = "reset"


@dataclass(frozen=True)
class ParityController:
    reference: str = "negative"

    def __post_init__(self):
        _require(self.reference == "negative", f"parity reference is fixed to 'negative', got {self.reference!r}")


def xor_parity(word: BitWord) -> int:
    """Bit-serial XOR chain, the way a parity tree computes it: 1 for an odd popcount."""
    acc, v = 0, word.value
    for _ in range(word.width):
        acc ^= v & 1
        v >>= 1
    return acc


def parity_decide(ctl: ParityController, w: BitWord) -> Signal:
    """Negative parity (odd popcount) means the word loaded cleanly."""
    if not isinstance(w, BitWord):
        raise TypeError(f"expected a BitWord, got {w!r}")
    return Signal.CONTINUE if w.popcount() % 2 == 1 else Signal.RESET


# -- topology transform ---------------------------------------------------------

class ZeroGain(ValueError):
    pass


class Unsupported(TypeError):
    pass


def parallel_to_serial(gain: Union[float, ProportionalController], r: float):
    """Pre-filter turning the parallel loop r - G*y into the serial loop G*(r/G - y)."""
    if isinstance(gain, ProportionalController):
        gain = gain.gain
    elif isinstance(gain, bool) or not isinstance(gain, (int, float)):
        raise Unsupported(f"only static gains have a pre-filter, got {type(gain).__name__}")
    _finite("gain", gain)
    _finite("r", r)
    if gain == 0:
        raise ZeroGain("a zero gain has no pre-filter")
    return float(gain), r / gain


__all__ = [
    "Topology", "summing_junction", "SerialJunction", "ParallelJunction",
    "BangBangController", "bangbang_decide",
    "ProportionalController", "proportional_decide",
    "CONTACT_TOL", "BimetalCoil", "bimetal_decide", "matched_contact_position",
    "GovernorController", "governor_field", "governor_step", "governor_abstract_step",
    "collar_height", "valve_command", "reference_speed", "THETA_MAX",
    "HumanPolicy", "human_policy_decide", "round_half_away",
    "Signal", "ParityController", "parity_decide", "xor_parity",
    "parallel_to_serial", "ZeroGain", "Unsupported",
]
