"""The scenario description language.

    scenario "thermostat-basic"
    topology serial
    plant thermal { T0=18.0  T_amb=10.0  C_th=1.0  k_loss=0.1  P_max=1.0 }
    controller bangbang { T_re=20.0  h=1.0 }
    run { dt=0.01  cycles=20000  integrator=rk4  seed=42 }
    epsilon { encode=0.0  controller=0.0  decode=0.0  plant=0.001 }
    disturb { at=10000  set=T_amb  value=5.0 }

Parsing runs in two phases.  The first builds a raw syntax tree that keeps
token positions; command-line overrides are spliced into that tree; the
second phase types and validates it into a `ControlScenario`.  Syntax and
unknown-key errors are `ParseError`s, out-of-range values `ValidationError`s.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from ..controllers import Topology
from ..dynamics import StepMethod

Scalar = Union[int, float, str]


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line, self.column, self.message = line, column, message


class ValidationError(ValueError):
    def __init__(self, field_name: str, reason: str):
        super().__init__(f"{field_name}: {reason}")
        self.field, self.reason = field_name, reason


# -- lexer ----------------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str      # STRING NUMBER IDENT LBRACE RBRACE EQUALS EOF
    text: str
    value: Scalar
    line: int
    column: int


_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_INTEGER = re.compile(r"[+-]?\d+")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_PUNCT = {"{": "LBRACE", "}": "RBRACE", "=": "EQUALS"}


def tokenize(text: str, line_base: int = 1) -> list:
    toks = []
    line, col0, i, n = line_base, 0, 0, len(text)
    while i < n:
        ch = text[i]
        col = i - col0 + 1
        if ch == "\n":
            line, col0, i = line + 1, i + 1, i + 1
        elif ch in " \t\r":
            i += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _PUNCT:
            toks.append(Token(_PUNCT[ch], ch, ch, line, col))
            i += 1
        elif ch == '"':
            j, buf = i + 1, []
            while True:
                if j >= n or text[j] == "\n":
                    raise ParseError(line, col, "unterminated string")
                if text[j] == "\\" and j + 1 < n and text[j + 1] in '"\\':
                    buf.append(text[j + 1])
                    j += 2
                elif text[j] == '"':
                    break
                else:
                    buf.append(text[j])
                    j += 1
            toks.append(Token("STRING", text[i:j + 1], "".join(buf), line, col))
            i = j + 1
        else:
            m = _NUMBER.match(text, i)
            if m and not (ch in "+-" and not m.group().lstrip("+-")):
                j = m.end()
                if j < n and (text[j].isalnum() or text[j] in "_."):
                    raise ParseError(line, col, f"malformed number {text[i:j + 1]!r}")
                s = m.group()
                toks.append(Token("NUMBER", s, int(s) if _INTEGER.fullmatch(s) else float(s), line, col))
                i = j
                continue
            m = _IDENT.match(text, i)
            if not m:
                raise ParseError(line, col, f"unexpected character {ch!r}")
            toks.append(Token("IDENT", m.group(), m.group(), line, col))
            i = m.end()
    toks.append(Token("EOF", "", "", line, i - col0 + 1))
    return toks


# -- raw tree -------------------------------------------------------------------

@dataclass
class Entry:
    key: str
    value: Scalar
    key_tok: Token
    value_tok: Token


@dataclass
class RawBlock:
    word: Token
    kind: Optional[Token]
    entries: list
    close: Token


@dataclass
class RawScenario:
    name: Token
    topology: Optional[Token] = None
    blocks: dict = field(default_factory=dict)     # plant/controller/run/epsilon
    disturbs: list = field(default_factory=list)
    eof: Optional[Token] = None


class _Parser:
    def __init__(self, toks):
        self.toks, self.pos = toks, 0

    def peek(self) -> Token:
        return self.toks[self.pos]

    def take(self, kind: str, what: str) -> Token:
        t = self.toks[self.pos]
        if t.kind != kind:
            found = "end of input" if t.kind == "EOF" else repr(t.text)
            raise ParseError(t.line, t.column, f"expected {what}, found {found}")
        self.pos += 1
        return t

    def block(self, word: Token, kind: Optional[Token]) -> RawBlock:
        self.take("LBRACE", "'{'")
        entries, seen = [], set()
        while self.peek().kind != "RBRACE":
            k = self.take("IDENT", "a key or '}'")
            self.take("EQUALS", f"'=' after {k.text!r}")
            v = self.peek()
            if v.kind not in ("NUMBER", "IDENT", "STRING"):
                raise ParseError(v.line, v.column, f"expected a value for {k.text!r}")
            self.pos += 1
            if k.text in seen:
                raise ParseError(k.line, k.column, f"duplicate key {k.text!r}")
            seen.add(k.text)
            entries.append(Entry(k.text, v.value, k, v))
        return RawBlock(word, kind, entries, self.take("RBRACE", "'}'"))

    def scenario(self) -> RawScenario:
        head = self.take("IDENT", "'scenario' header")
        if head.text != "scenario":
            raise ParseError(head.line, head.column, f"file must start with 'scenario', found {head.text!r}")
        raw = RawScenario(self.take("STRING", "a quoted scenario name"))
        while self.peek().kind != "EOF":
            w = self.take("IDENT", "a statement")
            if w.text == "topology":
                if raw.topology is not None:
                    raise ParseError(w.line, w.column, "topology given twice")
                raw.topology = self.take("IDENT", "a topology")
            elif w.text in ("plant", "controller"):
                kind = self.take("IDENT", f"a {w.text} kind")
                self._store(raw, w, self.block(w, kind))
            elif w.text in ("run", "epsilon"):
                self._store(raw, w, self.block(w, None))
            elif w.text == "disturb":
                raw.disturbs.append(self.block(w, None))
            else:
                raise ParseError(w.line, w.column, f"unknown statement {w.text!r}")
        raw.eof = self.peek()
        return raw

    @staticmethod
    def _store(raw: RawScenario, w: Token, blk: RawBlock) -> None:
        if w.text in raw.blocks:
            raise ParseError(w.line, w.column, f"more than one {w.text} block")
        raw.blocks[w.text] = blk


def parse_raw(text: str) -> RawScenario:
    return _Parser(tokenize(text)).scenario()


# -- overrides ------------------------------------------------------------------

OVERRIDE_BLOCKS = ("plant", "controller", "run", "epsilon")


def apply_overrides(raw: RawScenario, overrides: Iterable[str]) -> RawScenario:
    """Splice `block.key=value` (or `topology=...`) assignments into the raw tree.

    Errors are reported as ParseErrors on line 0, the command line.
    """
    for ov in overrides:
        lhs, eq, rhs = ov.partition("=")
        if not eq or not rhs.strip():
            raise ParseError(0, 1, f"override {ov!r} is not of the form key=value")
        try:
            toks = tokenize(rhs.strip(), line_base=0)
        except ParseError as e:
            raise ParseError(0, len(lhs) + 1 + e.column, f"override {ov!r}: {e.message}") from None
        if len(toks) != 2 or toks[0].kind not in ("NUMBER", "IDENT", "STRING"):
            raise ParseError(0, len(lhs) + 2, f"override {ov!r} needs a single value")
        vt = toks[0]
        lhs = lhs.strip()
        if lhs == "topology":
            raw.topology = vt
            continue
        block, dot, key = lhs.partition(".")
        if not dot or block not in OVERRIDE_BLOCKS or not _IDENT.fullmatch(key):
            raise ParseError(0, 1, f"override {ov!r}: expected one of "
                                   f"{', '.join(b + '.<key>' for b in OVERRIDE_BLOCKS)} or topology")
        blk = raw.blocks.get(block)
        if blk is None:
            raise ParseError(0, 1, f"override {ov!r}: scenario has no {block} block")
        kt = Token("IDENT", key, key, 0, 1)
        for e in blk.entries:
            if e.key == key:
                e.value, e.value_tok = vt.value, vt
                break
        else:
            blk.entries.append(Entry(key, vt.value, kt, vt))
    return raw


# -- schema ---------------------------------------------------------------------

REQUIRED = object()


@dataclass(frozen=True)
class Key:
    kind: str                 # real | int | ident
    default: object = REQUIRED
    check: Optional[str] = None   # positive | nonneg | unit | None
    choices: tuple = ()


def _real(default=REQUIRED, check=None):
    return Key("real", default, check)


def _int(default=REQUIRED, check=None):
    return Key("int", default, check)


OPTIONAL = None  # an optional key with no default is simply absent

PLANT_SCHEMA = {
    "thermal": {"T0": _real(), "T_amb": _real(), "C_th": _real(check="positive"),
                "k_loss": _real(check="nonneg"), "P_max": _real(check="nonneg")},
    "engine": {"omega0": _real(check="nonneg"), "J": _real(check="positive"),
               "tau_max": _real(), "tau_load": _real(), "valve0": _real(check="unit")},
    "processor": {"words": _int(check="positive"), "p_flip": _real(check="unit"),
                  "program_seed": _int(), "force_flip_at": _int(OPTIONAL),
                  "force_bit": _int(OPTIONAL)},
}

# parameters a disturbance may change; initial states are never disturbed
DISTURBABLE = {
    "thermal": ("T_amb", "C_th", "k_loss", "P_max"),
    "engine": ("J", "tau_max", "tau_load"),
    "processor": ("p_flip",),
}

CONTROLLER_SCHEMA = {
    "bangbang": {"T_re": _real(), "h": _real(check="nonneg")},
    "bimetal": {"T_re": _real(), "h": _real(check="nonneg"), "T_ref_cal": _real(),
                "x_at_cal": _real(), "alpha": _real(check="positive"), "x_re_offset": _real(0.0)},
    "proportional": {"gain": _real(), "r": _real(), "out_min": _real(0.0), "out_max": _real(1.0)},
    "governor": {"l1": _real(check="positive"), "beta": _real(check="nonneg"), "c0": _real(),
                 "c1": _real(), "x_re": _real(), "valve_gain": _real(), "v0": _real(check="unit"),
                 "theta0": _real(check="nonneg"), "theta_dot0": _real(0.0),
                 "g": _real(9.81, check="positive")},
    "human": {"T_re": _real(), "k_h": _real(), "quantum": _real(check="positive"),
              "delay": _int(check="nonneg"), "phi_max": _real(check="positive"), "phi0": _real(0.0)},
    "parity": {},
}

COMPATIBLE = {
    "thermal": ("bangbang", "bimetal", "proportional", "human"),
    "engine": ("governor", "proportional"),
    "processor": ("parity",),
}

RUN_SCHEMA = {
    "dt": _real(check="positive"), "cycles": _int(check="positive"),
    "integrator": Key("ident", choices=tuple(m.value for m in StepMethod)),
    "seed": _int(0), "s0": Key("any", OPTIONAL),
}

SQUARES = ("encode", "controller", "decode", "plant")
# an omitted tolerance means exact commutation, the strictest reading
EPSILON_SCHEMA = {k: _real(0.0, check="nonneg") for k in SQUARES}

DISTURB_SCHEMA = {"at": _int(check="nonneg"), "set": Key("ident"), "value": _real()}


# -- typed scenario -------------------------------------------------------------

@dataclass(frozen=True)
class ComponentSpec:
    kind: str
    params: tuple   # ((name, value), ...) in schema order

    def __getitem__(self, name: str):
        for k, v in self.params:
            if k == name:
                return v
        raise KeyError(name)

    def get(self, name: str, default=None):
        try:
            return self[name]
        except KeyError:
            return default

    def as_dict(self) -> dict:
        return dict(self.params)


@dataclass(frozen=True)
class Disturbance:
    at: int
    param: str
    value: float


@dataclass(frozen=True)
class Epsilons:
    encode: float
    controller: float
    decode: float
    plant: float

    def __getitem__(self, square: str) -> float:
        if square not in SQUARES:
            raise KeyError(square)
        return getattr(self, square)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in SQUARES}


@dataclass(frozen=True)
class ControlScenario:
    name: str
    topology: Topology
    plant: ComponentSpec
    controller: ComponentSpec
    dt: float
    cycles: int
    integrator: StepMethod
    seed: int
    epsilon: Epsilons
    disturbances: tuple = ()
    s0: Optional[Scalar] = None

    @property
    def reference(self):
        c = self.controller
        if c.kind == "parity":
            return "negative"
        if c.kind == "governor":
            return c["x_re"]
        if c.kind == "proportional":
            return c["r"]
        return c["T_re"]


def _coerce(key: str, rule: Key, e: Entry, where: str):
    v, t = e.value, e.value_tok
    if rule.kind == "any":
        return v
    if rule.kind == "ident":
        if t.kind != "IDENT":
            raise ParseError(t.line, t.column, f"{where}.{key} expects a name, found {t.text!r}")
        if rule.choices and v not in rule.choices:
            raise ParseError(t.line, t.column,
                             f"{where}.{key} must be one of {', '.join(rule.choices)}, found {v!r}")
        return v
    if t.kind != "NUMBER":
        raise ParseError(t.line, t.column, f"{where}.{key} expects a number, found {t.text!r}")
    if rule.kind == "int":
        if isinstance(v, float):
            if not v.is_integer():
                raise ParseError(t.line, t.column, f"{where}.{key} expects a whole number, found {t.text!r}")
            v = int(v)
        return v
    return float(v)


def _check_range(name: str, v, check: Optional[str]) -> None:
    if isinstance(v, float) and not math.isfinite(v):
        raise ValidationError(name, f"must be finite, got {v!r}")
    if check == "positive" and not v > 0:
        raise ValidationError(name, f"must be positive, got {v!r}")
    if check == "nonneg" and not v >= 0:
        raise ValidationError(name, f"must be non-negative, got {v!r}")
    if check == "unit" and not 0 <= v <= 1:
        raise ValidationError(name, f"must lie in [0, 1], got {v!r}")


def _typed(blk: RawBlock, schema: dict, where: str) -> tuple:
    given = {}
    for e in blk.entries:
        if e.key not in schema:
            raise ParseError(e.key_tok.line, e.key_tok.column,
                             f"unknown key {e.key!r} in {where} (expected one of: {', '.join(schema) or 'none'})")
        given[e.key] = _coerce(e.key, schema[e.key], e, where)
    out = []
    for key, rule in schema.items():
        if key in given:
            v = given[key]
        elif rule.default is REQUIRED:
            raise ParseError(blk.close.line, blk.close.column, f"{where} is missing key {key!r}")
        elif rule.default is OPTIONAL:
            continue
        else:
            v = rule.default
        if rule.kind in ("real", "int"):
            _check_range(f"{where}.{key}", v, rule.check)
        out.append((key, v))
    return tuple(out)


def _component(raw: RawScenario, word: str, schemas: dict) -> Optional[ComponentSpec]:
    blk = raw.blocks.get(word)
    if blk is None:
        return None
    kind = blk.kind.text
    if kind not in schemas:
        raise ParseError(blk.kind.line, blk.kind.column,
                         f"unknown {word} kind {kind!r} (expected one of: {', '.join(schemas)})")
    return ComponentSpec(kind, _typed(blk, schemas[kind], f"{word} {kind}"))


def _semantic_checks(sc: ControlScenario) -> None:
    p, c = sc.plant, sc.controller
    if c.kind not in COMPATIBLE[p.kind]:
        raise ValidationError("controller", f"a {c.kind} controller cannot drive a {p.kind} plant")
    if sc.topology is Topology.PARALLEL and c.kind != "proportional":
        raise ValidationError("topology", "the parallel topology needs a static-gain (proportional) controller")
    for d in sc.disturbances:
        if d.at >= sc.cycles:
            raise ValidationError("disturb.at", f"cycle {d.at} is not below cycles={sc.cycles}")
        if d.param not in DISTURBABLE[p.kind]:
            raise ValidationError("disturb.set", f"{d.param!r} is not a disturbable {p.kind} parameter "
                                                 f"(expected one of: {', '.join(DISTURBABLE[p.kind])})")
        _check_range("disturb.value", d.value, PLANT_SCHEMA[p.kind][d.param].check)
    if p.kind == "processor":
        ff = p.get("force_flip_at")
        if ff is not None and (ff < 1 or ff % 2 == 0 or ff >= sc.cycles):
            raise ValidationError("plant.force_flip_at",
                                  f"words reach the bus on odd cycles below cycles={sc.cycles}, got {ff}")
        fb = p.get("force_bit")
        if fb is not None and not 0 <= fb < 16:
            raise ValidationError("plant.force_bit", f"must lie in [0, 16), got {fb}")
        if fb is not None and ff is None:
            raise ValidationError("plant.force_bit", "needs force_flip_at")
    if c.kind == "proportional" and c["out_min"] > c["out_max"]:
        raise ValidationError("controller.out_min", "exceeds out_max")
    if c.kind == "governor":
        if not c["c1"] < 0:
            raise ValidationError("controller.c1", f"must be negative, got {c['c1']}")
        if not c["theta0"] < math.pi / 2:
            raise ValidationError("controller.theta0", f"must be below pi/2, got {c['theta0']}")
    if c.kind == "human":
        q = c["quantum"]
        for k in ("phi_max", "phi0"):
            n = round(c[k] / q)
            if abs(n * q - c[k]) > 1e-9 * max(1.0, abs(c[k])):
                raise ValidationError(f"controller.{k}", f"must be a whole number of quanta ({q})")
        if not 0 <= c["phi0"] <= c["phi_max"]:
            raise ValidationError("controller.phi0", "must lie in [0, phi_max]")
    if sc.s0 is not None:
        _check_s0(sc)


def _check_s0(sc: ControlScenario) -> None:
    k, s0 = sc.controller.kind, sc.s0
    if k == "parity":
        if s0 not in ("continue", "reset"):
            raise ValidationError("run.s0", f"must be continue or reset, got {s0!r}")
    elif isinstance(s0, str):
        raise ValidationError("run.s0", f"must be a number for a {k} controller, got {s0!r}")
    elif k in ("bangbang", "bimetal") and s0 not in (0, 1):
        raise ValidationError("run.s0", f"an on/off signal must be 0 or 1, got {s0!r}")
    elif k == "human" and not 0 <= s0 <= sc.controller["phi_max"]:
        raise ValidationError("run.s0", "knob angle must lie in [0, phi_max]")
    elif k in ("governor", "proportional") and not math.isfinite(s0):
        raise ValidationError("run.s0", "must be finite")


def build_scenario(raw: RawScenario) -> ControlScenario:
    # diagnose what is written before what is absent
    plant = _component(raw, "plant", PLANT_SCHEMA)
    controller = _component(raw, "controller", CONTROLLER_SCHEMA)
    run = raw.blocks.get("run") and dict(_typed(raw.blocks["run"], RUN_SCHEMA, "run"))
    eps = raw.blocks.get("epsilon") and dict(_typed(raw.blocks["epsilon"], EPSILON_SCHEMA, "epsilon"))
    for word, got in (("plant", plant), ("controller", controller), ("run", run), ("epsilon", eps)):
        if got is None:
            raise ParseError(raw.eof.line, raw.eof.column, f"missing {word} block")
    topo = Topology.SERIAL
    if raw.topology is not None:
        t = raw.topology
        try:
            topo = Topology(t.value)
        except ValueError:
            raise ParseError(t.line, t.column, f"unknown topology {t.text!r} (expected serial or parallel)") from None
    dist = tuple(Disturbance(**{"at": d["at"], "param": d["set"], "value": d["value"]})
                 for d in (dict(_typed(b, DISTURB_SCHEMA, "disturb")) for b in raw.disturbs))
    s0 = run.get("s0")
    if isinstance(s0, int) and not isinstance(s0, bool):
        s0 = float(s0)
    sc = ControlScenario(
        name=raw.name.value, topology=topo, plant=plant, controller=controller,
        dt=run["dt"], cycles=run["cycles"], integrator=StepMethod(run["integrator"]),
        seed=run["seed"], epsilon=Epsilons(**eps),
        disturbances=tuple(sorted(dist, key=lambda d: d.at)), s0=s0)
    _semantic_checks(sc)
    return sc


def parse_scenario(text: str, overrides: Iterable[str] = ()) -> ControlScenario:
    raw = parse_raw(text)
    if overrides:
        apply_overrides(raw, overrides)
    return build_scenario(raw)


# -- serializer -----------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, str):
        return v if _IDENT.fullmatch(v) else '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return repr(v)


def _kv(pairs) -> str:
    body = "  ".join(f"{k}={_fmt(v)}" for k, v in pairs)
    return "{ " + body + " }" if body else "{ }"


def serialize(sc: ControlScenario) -> str:
    """Canonical source text; parse(serialize(sc)) == sc."""
    name = sc.name.replace("\\", "\\\\").replace('"', '\\"')
    run = [("dt", sc.dt), ("cycles", sc.cycles), ("integrator", sc.integrator.value), ("seed", sc.seed)]
    if sc.s0 is not None:
        run.append(("s0", sc.s0))
    lines = [
        f'scenario "{name}"',
        f"topology {sc.topology.value}",
        f"plant {sc.plant.kind} {_kv(sc.plant.params)}",
        f"controller {sc.controller.kind} {_kv(sc.controller.params)}",
        f"run {_kv(run)}",
        f"epsilon {_kv(sc.epsilon.as_dict().items())}",
    ]
    lines += [f"disturb {_kv([('at', d.at), ('set', d.param), ('value', d.value)])}"
              for d in sc.disturbances]
    return "\n".join(lines) + "\n"


__all__ = [
    "ParseError", "ValidationError", "Token", "tokenize", "parse_raw", "apply_overrides",
    "build_scenario", "parse_scenario", "serialize", "ControlScenario", "ComponentSpec",
    "Disturbance", "Epsilons", "SQUARES", "PLANT_SCHEMA", "CONTROLLER_SCHEMA",
    "DISTURBABLE", "COMPATIBLE",
]
