"""Physical/abstract layers, representation maps and epsilon-commutation checks.

A physical object is a `PhysicalState` (unit-tagged quantities at a time), an
abstract object is an `AbstractState` (reals, booleans and bit words).  A
`RepresentationPair` maps a declared subset of quantities between the two.
`check_square` compares the abstract-evolution path against the
represent-after-physical-evolution path of a square; `check_cube` runs the
four squares of one compute cycle in a fixed order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Any, Callable, Iterable, Mapping, NamedTuple, Optional, Union


class ArtError(Exception):
    """Base class for representation and commutation errors."""


class MissingQuantity(ArtError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"physical state has no quantity {self.name!r}"


class MissingValue(ArtError, KeyError):
    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self) -> str:
        return f"abstract state has no value {self.name!r}"


class NonInvertible(ArtError):
    pass


class ShapeMismatch(ArtError):
    pass


class KindMismatch(ArtError):
    pass


class CornerMismatch(ArtError):
    pass


class Unit(str, Enum):
    KELVIN = "kelvin"
    RADIAN = "radian"
    RADIAN_PER_SECOND = "radian/second"
    VOLT = "volt"
    METRE = "metre"
    DIMENSIONLESS = "dimensionless"
    BITS = "bits"


@dataclass(frozen=True)
class BitWord:
    width: int
    value: int

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError(f"bit word width must be positive, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    def popcount(self) -> int:
        return self.value.bit_count()

    def flip(self, bit: int) -> "BitWord":
        if not 0 <= bit < self.width:
            raise ValueError(f"bit {bit} outside width {self.width}")
        return BitWord(self.width, self.value ^ (1 << bit))


Value = Union[float, bool, BitWord]


_KINDS = {float: "real", int: "real", bool: "boolean", BitWord: "bitword"}


def value_kind(v: Value) -> str:
    k = _KINDS.get(type(v))
    if k is not None:
        return k
    if isinstance(v, bool):
        return "boolean"
    if isinstance(v, BitWord):
        return "bitword"
    if isinstance(v, (int, float)):
        return "real"
    raise TypeError(f"unsupported abstract value {v!r}")


class Quantity(NamedTuple):
    value: float
    unit: Unit
    width: Optional[int] = None


def _check_quantity(name: str, q: Quantity) -> None:
    if q.unit is Unit.BITS:
        if q.width is None or q.width <= 0:
            raise ValueError(f"bit quantity {name!r} needs a positive width")
        if not isinstance(q.value, int) or not 0 <= q.value < (1 << q.width):
            raise ValueError(f"bit quantity {name!r}={q.value!r} does not fit in {q.width} bits")
    elif not math.isfinite(q.value):
        raise ValueError(f"quantity {name!r} is not finite: {q.value!r}")


@dataclass(frozen=True, eq=True)
class PhysicalState:
    time: float
    quantities: Mapping[str, Quantity]

    def __post_init__(self):
        if not math.isfinite(self.time):
            raise ValueError(f"time must be finite, got {self.time!r}")
        qs = {}
        for name, q in self.quantities.items():
            if not isinstance(q, Quantity):
                q = Quantity(*q)
            _check_quantity(name, q)
            qs[name] = q
        object.__setattr__(self, "quantities", MappingProxyType(qs))

    @classmethod
    def of(cls, time: float, **quantities: tuple) -> "PhysicalState":
        return cls(time, {k: Quantity(*v) for k, v in quantities.items()})

    def __getitem__(self, name: str):
        try:
            return self.quantities[name].value
        except KeyError:
            raise MissingQuantity(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.quantities

    def updated(self, time: Optional[float] = None, **values) -> "PhysicalState":
        """Copy with new values for existing quantities (units kept)."""
        qs = dict(self.quantities)
        for k, v in values.items():
            if k not in qs:
                raise MissingQuantity(k)
            qs[k] = qs[k]._replace(value=v)
        return PhysicalState(self.time if time is None else time, qs)

    def merged(self, other: "PhysicalState", time: Optional[float] = None) -> "PhysicalState":
        qs = dict(self.quantities)
        qs.update(other.quantities)
        return PhysicalState(self.time if time is None else time, qs)

    def restricted(self, names: Iterable[str]) -> "PhysicalState":
        return PhysicalState(self.time, {n: self.quantities[n] for n in names})


@dataclass(frozen=True, eq=True)
class AbstractState:
    values: Mapping[str, Value]

    def __post_init__(self):
        vals = dict(self.values)
        for v in vals.values():
            value_kind(v)
        object.__setattr__(self, "values", MappingProxyType(vals))

    @classmethod
    def of(cls, **values: Value) -> "AbstractState":
        return cls(values)

    def __getitem__(self, name: str) -> Value:
        try:
            return self.values[name]
        except KeyError:
            raise MissingValue(name) from None

    def __contains__(self, name: str) -> bool:
        return name in self.values

    def names(self) -> frozenset:
        return frozenset(self.values)


# -- representation -------------------------------------------------------------

@dataclass(frozen=True)
class QuantityMap:
    """One declared quantity: physical name/unit <-> abstract name."""
    physical: str
    abstract: str
    unit: Unit
    forward: Callable[[Any], Value]
    inverse: Optional[Callable[[Value], Any]] = None
    width: Optional[int] = None


def identity_map(name: str, unit: Unit, abstract: Optional[str] = None) -> QuantityMap:
    return QuantityMap(name, abstract or name, unit, float, float)


def affine_map(physical: str, abstract: str, unit: Unit, scale: float, offset: float) -> QuantityMap:
    """abstract = scale * physical + offset, inverted exactly where floats allow."""
    if scale == 0:
        raise ValueError("affine map needs a non-zero scale")
    return QuantityMap(physical, abstract, unit,
                       lambda x: scale * x + offset,
                       lambda m: (m - offset) / scale)


def table_map(physical: str, abstract: str, unit: Unit, table: Mapping[float, Value]) -> QuantityMap:
    inverse = {v: k for k, v in table.items()}
    if len(inverse) != len(table):
        raise ValueError("table map must be one-to-one")

    def fwd(x):
        try:
            return table[x]
        except KeyError:
            raise ValueError(f"{physical}={x!r} is outside the table's domain") from None

    def inv(m):
        try:
            return inverse[m]
        except KeyError:
            raise ValueError(f"{abstract}={m!r} is outside the table's range") from None

    return QuantityMap(physical, abstract, unit, fwd, inv)


def boolean_map(physical: str, abstract: str, unit: Unit = Unit.DIMENSIONLESS) -> QuantityMap:
    """Two-level quantity 0.0/1.0 <-> False/True."""
    return table_map(physical, abstract, unit, {0.0: False, 1.0: True})


def bitword_map(physical: str, abstract: str, width: int) -> QuantityMap:
    return QuantityMap(physical, abstract, Unit.BITS,
                       lambda x: BitWord(width, x),
                       lambda m: m.value, width)


def one_way(qm: QuantityMap) -> QuantityMap:
    return QuantityMap(qm.physical, qm.abstract, qm.unit, qm.forward, None, qm.width)


@dataclass(frozen=True)
class RepresentationPair:
    theory: str
    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        phys = [m.physical for m in maps]
        abst = [m.abstract for m in maps]
        if len(set(phys)) != len(phys) or len(set(abst)) != len(abst):
            raise ValueError(f"representation {self.theory!r} declares duplicate names")
        object.__setattr__(self, "maps", maps)

    @property
    def physical_names(self) -> tuple:
        return tuple(m.physical for m in self.maps)

    @property
    def abstract_names(self) -> tuple:
        return tuple(m.abstract for m in self.maps)


def represent(rep: RepresentationPair, p: PhysicalState) -> AbstractState:
    qs = p.quantities
    out = {}
    for m in rep.maps:
        q = qs.get(m.physical)
        if q is None:
            raise MissingQuantity(m.physical)
        out[m.abstract] = m.forward(q.value)
    return AbstractState(out)


def instantiate(rep: RepresentationPair, m: AbstractState, time: float = 0.0) -> PhysicalState:
    vals = m.values
    out = {}
    for qm in rep.maps:
        if qm.inverse is None:
            raise NonInvertible(f"{rep.theory}: {qm.abstract!r} has no instantiation")
        if qm.abstract not in vals:
            raise MissingValue(qm.abstract)
        out[qm.physical] = Quantity(qm.inverse(vals[qm.abstract]), qm.unit, qm.width)
    return PhysicalState(time, out)


# -- distance -------------------------------------------------------------------

class MetricKind(str, Enum):
    ABSOLUTE = "absolute-difference"
    DISCRETE = "discrete"
    WEIGHTED = "weighted-sum"


@dataclass(frozen=True)
class Metric:
    kind: MetricKind
    weights: Optional[Mapping[str, float]] = None

    def __post_init__(self):
        if self.kind is MetricKind.WEIGHTED:
            if not self.weights:
                raise ValueError("weighted-sum metric needs weights")
            if any(w < 0 or not math.isfinite(w) for w in self.weights.values()):
                raise ValueError("metric weights must be finite and non-negative")
            object.__setattr__(self, "weights", MappingProxyType(dict(self.weights)))

    @classmethod
    def absolute(cls) -> "Metric":
        return cls(MetricKind.ABSOLUTE)

    @classmethod
    def discrete(cls) -> "Metric":
        return cls(MetricKind.DISCRETE)

    @classmethod
    def weighted(cls, **weights: float) -> "Metric":
        return cls(MetricKind.WEIGHTED, weights)


def distance(metric: Metric, a: AbstractState, b: AbstractState) -> float:
    av, bv = a.values, b.values
    if av.keys() != bv.keys():
        raise ShapeMismatch(f"name sets differ: {sorted(av)} vs {sorted(bv)}")
    kinds = {}
    for n in av:
        ka, kb = value_kind(av[n]), value_kind(bv[n])
        if ka != kb:
            raise KindMismatch(f"{n!r}: {ka} vs {kb}")
        if ka == "bitword" and av[n].width != bv[n].width:
            raise KindMismatch(f"{n!r}: bit widths {av[n].width} vs {bv[n].width}")
        kinds[n] = ka
    if metric.kind is MetricKind.DISCRETE:
        return 0.0 if all(av[n] == bv[n] for n in av) else 1.0
    if metric.kind is MetricKind.ABSOLUTE:
        total = 0.0
        for n in av:
            if kinds[n] != "real":
                raise KindMismatch(f"absolute-difference metric needs reals, {n!r} is {kinds[n]}")
            total += abs(av[n] - bv[n])
        return total
    total = 0.0
    for n, w in metric.weights.items():
        if n not in av:
            raise ShapeMismatch(f"weighted component {n!r} absent from states")
        a, b = av[n], bv[n]
        total += w * (abs(a - b) if kinds[n] == "real" else 0.0 if a == b else 1.0)
    return total


# -- squares and cubes ----------------------------------------------------------

@dataclass(frozen=True)
class Corners:
    physical_in: PhysicalState
    abstract_in: AbstractState
    physical_out: PhysicalState
    abstract_out: AbstractState      # C(R(p))
    represented_out: AbstractState   # R(H(p))


@dataclass(frozen=True)
class CommutationReport:
    residual: float
    epsilon: float
    corners: Optional[Corners] = None
    square: str = ""

    @property
    def commutes(self) -> bool:
        return self.residual <= self.epsilon


@dataclass(frozen=True)
class CommutationSquare:
    """Left edge `rep`, right edge `output_rep` (defaults to `rep`).

    Encode/decode squares join two systems described by different theories,
    so their two vertical edges use different representations.
    """
    initial_physical: PhysicalState
    rep: RepresentationPair
    abstract_evolution: Callable[[AbstractState], AbstractState]
    physical_evolution: Callable[[PhysicalState], PhysicalState]
    metric: Metric
    epsilon: float
    output_rep: Optional[RepresentationPair] = None
    name: str = ""

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError(f"epsilon must be non-negative, got {self.epsilon!r}")


def check_square(sq: CommutationSquare) -> CommutationReport:
    p = sq.initial_physical
    m = represent(sq.rep, p)
    top = sq.abstract_evolution(m)
    p_out = sq.physical_evolution(p)
    bottom = represent(sq.output_rep or sq.rep, p_out)
    residual = distance(sq.metric, top, bottom)
    return CommutationReport(residual, sq.epsilon, Corners(p, m, p_out, top, bottom), sq.name)


SQUARE_ORDER = ("encode", "controller", "decode", "plant")


@dataclass(frozen=True)
class ComputeCube:
    encode_square: CommutationSquare
    controller_face: CommutationSquare
    decode_square: CommutationSquare
    plant_face: CommutationSquare
    problem: Optional[AbstractState] = None
    solution: Optional[AbstractState] = None


def _agree(produced: PhysicalState, consumer: PhysicalState, where: str) -> None:
    if produced.time != consumer.time:
        raise CornerMismatch(f"{where}: time {produced.time!r} vs {consumer.time!r}")
    for name, q in produced.quantities.items():
        if consumer.quantities.get(name) != q:
            raise CornerMismatch(f"{where}: {name!r} is {q} on one side and "
                                 f"{consumer.quantities.get(name)} on the other")


def check_cube(cube: ComputeCube) -> list:
    """Reports in the order [encode, controller, decode, plant]."""
    enc = check_square(cube.encode_square)
    if cube.problem is not None and cube.problem != enc.corners.abstract_in:
        raise CornerMismatch("problem does not match the encode square's abstract input")
    _agree(enc.corners.physical_out, cube.controller_face.initial_physical, "encode -> controller")
    ctl = check_square(cube.controller_face)
    _agree(ctl.corners.physical_out, cube.decode_square.initial_physical, "controller -> decode")
    dec = check_square(cube.decode_square)
    if cube.solution is not None and cube.solution != dec.corners.abstract_out:
        raise CornerMismatch("solution does not match the decode square's abstract output")
    plant = check_square(cube.plant_face)
    names = dict(zip(SQUARE_ORDER, (enc, ctl, dec, plant)))
    return [r if r.square else CommutationReport(r.residual, r.epsilon, r.corners, k)
            for k, r in names.items()]
