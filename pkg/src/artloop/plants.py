"""Plant models: heated room/cabin, steam-engine shaft, and a parity-protected processor.

Each continuous plant has a physical step (numerical, via `dynamics`) and an
abstract step (closed-form solution of the same linear law with the input
held), so plant-face residuals are pure discretization error.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace
from typing import Optional

from .core import BitWord
from .dynamics import NonFiniteState, StepMethod, VectorField, step


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


# -- thermal --------------------------------------------------------------------

@dataclass(frozen=True)
class ThermalPlant:
    T: float
    T_amb: float
    C_th: float
    k_loss: float
    P_max: float

    def __post_init__(self):
        _require(self.C_th > 0, f"C_th must be positive, got {self.C_th}")
        _require(self.k_loss >= 0, f"k_loss must be non-negative, got {self.k_loss}")
        _require(self.P_max >= 0, f"P_max must be non-negative, got {self.P_max}")


def thermal_field(plant: ThermalPlant) -> VectorField:
    C, k, P, Ta = plant.C_th, plant.k_loss, plant.P_max, plant.T_amb
    return VectorField(1, lambda x, u, t: ((u[0] * P - k * (x[0] - Ta)) / C,))


def thermal_step(plant: ThermalPlant, u: float, dt: float, method: StepMethod) -> ThermalPlant:
    _require(0.0 <= u <= 1.0, f"heater fraction must lie in [0, 1], got {u}")
    (T,) = step(thermal_field(plant), method, (plant.T,), (u,), 0.0, dt)
    return replace(plant, T=T)


def thermal_abstract_step(T0: float, u: float, dt: float, params: ThermalPlant) -> float:
    """Exact solution of C dT/dt = u P - k (T - T_amb) over dt with u held."""
    _require(0.0 <= u <= 1.0, f"heater fraction must lie in [0, 1], got {u}")
    _require(dt >= 0, f"dt must be non-negative, got {dt}")
    k, C = params.k_loss, params.C_th
    if k == 0:
        return T0 + u * params.P_max * dt / C
    T_eq = params.T_amb + u * params.P_max / k
    return T_eq + (T0 - T_eq) * math.exp(-k * dt / C)


# -- engine ---------------------------------------------------------------------

@dataclass(frozen=True)
class EnginePlant:
    omega: float
    J: float
    tau_max: float
    tau_load: float
    valve: float

    def __post_init__(self):
        _require(self.J > 0, f"J must be positive, got {self.J}")
        _require(0.0 <= self.valve <= 1.0, f"valve must lie in [0, 1], got {self.valve}")
        _require(self.omega >= 0, f"omega must be non-negative, got {self.omega}")


def clamp(v: float, lo: float, hi: float) -> float:
    return lo if v < lo else hi if v > hi else v


def engine_field(plant: EnginePlant) -> VectorField:
    J, tmax, tload = plant.J, plant.tau_max, plant.tau_load
    return VectorField(1, lambda x, u, t: ((tmax * u[0] - tload) / J,))


def engine_step(plant: EnginePlant, valve_cmd: float, dt: float, method: StepMethod) -> EnginePlant:
    valve = clamp(valve_cmd, 0.0, 1.0)
    (w,) = step(engine_field(plant), method, (plant.omega,), (valve,), 0.0, dt)
    return replace(plant, omega=max(w, 0.0), valve=valve)


def engine_abstract_step(omega0: float, valve: float, dt: float, params: EnginePlant) -> float:
    return max(omega0 + (params.tau_max * valve - params.tau_load) * dt / params.J, 0.0)


# -- processor ------------------------------------------------------------------

WORD_WIDTH = 16
DATA_MASK = (1 << (WORD_WIDTH - 1)) - 1
PARITY_BIT = WORD_WIDTH - 1
ACC_WIDTH = WORD_WIDTH - 1
# NOP with valid parity; held on the bus while a fetched word awaits its verdict
BUBBLE = BitWord(WORD_WIDTH, 1 << PARITY_BIT)


class HaltedProgram(RuntimeError):
    pass


def encode_word(data: int) -> int:
    """Set the parity bit so the stored word has odd popcount (negative parity)."""
    data &= DATA_MASK
    return data | ((1 - data.bit_count() % 2) << PARITY_BIT)


def word_data(word: int) -> int:
    return word & DATA_MASK


def accumulate(acc: int, word: int) -> int:
    return (acc + word_data(word)) & DATA_MASK


def make_program(n_words: int, seed: int) -> tuple:
    rng = random.Random(seed)
    return tuple(encode_word(rng.getrandbits(WORD_WIDTH - 1)) for _ in range(n_words))


@dataclass(frozen=True)
class ProcessorPlant:
    """A fetch/commit machine whose memory channel may flip one bit per fetch.

    Instructions take two cycles.  In the commit phase the incoming signal
    decides the fate of the pending word (commit it, or roll back to the
    checkpoint) and the next word is fetched onto the bus.  The latch phase
    ignores its signal, which was computed before the fetched word became
    visible, and leaves `BUBBLE` on the bus.  This keeps the one-cycle
    controller latency from ever pairing a verdict with the wrong word.
    """
    storage: tuple
    p_flip: float = 0.0
    rng_seed: int = 0
    pc: int = 0
    acc: int = 0
    checkpoint: tuple = (0, 0)
    pending: Optional[int] = None
    latch: bool = False
    halted: bool = False
    flips: int = 0
    resets: int = 0

    def __post_init__(self):
        _require(len(self.storage) > 0, "program must contain at least one word")
        _require(0.0 <= self.p_flip <= 1.0, f"p_flip must lie in [0, 1], got {self.p_flip}")
        _require(0 <= self.pc <= len(self.storage), f"pc {self.pc} outside program")

    @classmethod
    def boot(cls, storage, p_flip: float = 0.0, rng_seed: int = 0) -> "ProcessorPlant":
        storage = tuple(storage)
        for w in storage:
            _require(0 <= w < (1 << WORD_WIDTH) and w.bit_count() % 2 == 1,
                     f"stored word {w:#06x} does not carry negative parity")
        return cls(storage, p_flip, rng_seed)

    @property
    def bus(self) -> BitWord:
        if self.latch and self.pending is not None:
            return BitWord(WORD_WIDTH, self.pending)
        return BUBBLE


def _fetch(plant: ProcessorPlant, rng: random.Random, force_bit: Optional[int]):
    word = plant.storage[plant.pc]
    if force_bit is not None:
        _require(0 <= force_bit < WORD_WIDTH, f"forced bit {force_bit} outside word")
        return word ^ (1 << force_bit), 1
    if plant.p_flip > 0 and rng.random() < plant.p_flip:
        return word ^ (1 << rng.randrange(WORD_WIDTH)), 1
    return word, 0


def processor_step(plant: ProcessorPlant, signal: str, seed: int,
                   force_bit: Optional[int] = None):
    """Advance one cycle under `signal` ("continue" or "reset").

    Returns the new plant and the word now on the bus.
    """
    if plant.halted:
        raise HaltedProgram(f"program finished at pc={plant.pc}")
    if signal not in ("continue", "reset"):
        raise ValueError(f"unknown signal {signal!r}")
    if plant.latch:
        nxt = replace(plant, latch=False)
        return nxt, nxt.bus

    pc, acc, ckpt, resets = plant.pc, plant.acc, plant.checkpoint, plant.resets
    if plant.pending is not None:
        if signal == "reset":
            pc, acc = ckpt
            resets += 1
        else:
            acc = accumulate(acc, plant.pending)
            pc += 1
            ckpt = (pc, acc)
    if pc == len(plant.storage):
        nxt = replace(plant, pc=pc, acc=acc, checkpoint=ckpt, pending=None,
                      latch=False, halted=True, resets=resets)
        return nxt, nxt.bus
    fetched, flipped = _fetch(replace(plant, pc=pc), random.Random(seed), force_bit)
    nxt = replace(plant, pc=pc, acc=acc, checkpoint=ckpt, pending=fetched,
                  latch=True, flips=plant.flips + flipped, resets=resets)
    return nxt, nxt.bus


__all__ = [
    "ThermalPlant", "thermal_field", "thermal_step", "thermal_abstract_step",
    "EnginePlant", "engine_field", "engine_step", "engine_abstract_step", "clamp",
    "ProcessorPlant", "processor_step", "HaltedProgram", "BUBBLE", "WORD_WIDTH",
    "encode_word", "word_data", "accumulate", "make_program",
    "NonFiniteState",
]
