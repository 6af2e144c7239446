import math

import pytest
from hypothesis import given, settings, strategies as st

from artloop.core import (
    AbstractState, BitWord, CommutationSquare, ComputeCube, CornerMismatch, KindMismatch, Metric,
    MissingQuantity, MissingValue, NonInvertible, PhysicalState, RepresentationPair, SQUARE_ORDER,
    ShapeMismatch, Unit, affine_map, bitword_map, boolean_map, check_cube, check_square, distance,
    identity_map, instantiate, one_way, represent, table_map,
)
from oracles import newton_cooling

K = Unit.KELVIN
DIM = Unit.DIMENSIONLESS

SWITCH = RepresentationPair("switch", (table_map("switch", "bit", DIM, {0.0: BitWord(1, 0), 1.0: BitWord(1, 1)}),))
ROOM = RepresentationPair("thermal", (identity_map("T", K),))
COLLAR = RepresentationPair("governor", (affine_map("x", "omega", Unit.METRE, 10.0, 1.0),))


# -- represent / instantiate ----------------------------------------------------

def test_switch_up_represents_bit_zero():
    up = PhysicalState.of(0.0, switch=(0.0, DIM))
    assert represent(SWITCH, up) == AbstractState.of(bit=BitWord(1, 0))


def test_identity_represent():
    assert represent(ROOM, PhysicalState.of(0.0, T=(293.0, K))) == AbstractState.of(T=293.0)


def test_affine_represent():
    m = represent(COLLAR, PhysicalState.of(0.0, x=(0.35, Unit.METRE)))
    assert m["omega"] == pytest.approx(4.5, abs=1e-12)


def test_represent_reads_only_declared_quantities():
    p = PhysicalState.of(1.0, T=(20.0, K), heater=(1.0, DIM))
    assert represent(ROOM, p).names() == {"T"}


def test_represent_missing_quantity():
    with pytest.raises(MissingQuantity) as e:
        represent(ROOM, PhysicalState.of(0.0, omega=(1.0, Unit.RADIAN_PER_SECOND)))
    assert e.value.name == "T"


def test_instantiate_examples():
    assert instantiate(SWITCH, AbstractState.of(bit=BitWord(1, 0)))["switch"] == 0.0
    reg = RepresentationPair("register", (identity_map("T_re", K),))
    assert instantiate(reg, AbstractState.of(T_re=293.0))["T_re"] == 293.0
    assert instantiate(COLLAR, AbstractState.of(omega=4.5))["x"] == pytest.approx(0.35, abs=1e-12)


def test_instantiate_errors():
    with pytest.raises(MissingValue):
        instantiate(ROOM, AbstractState.of(omega=1.0))
    with pytest.raises(NonInvertible):
        instantiate(RepresentationPair("t", (one_way(identity_map("T", K)),)), AbstractState.of(T=1.0))


def test_instantiate_carries_units_and_widths():
    rep = RepresentationPair("w", (bitword_map("w", "w", 16),))
    p = instantiate(rep, AbstractState.of(w=BitWord(16, 0x8001)), time=2.0)
    assert p.quantities["w"].unit is Unit.BITS and p.quantities["w"].width == 16 and p.time == 2.0


def test_state_invariants():
    with pytest.raises(ValueError):
        PhysicalState.of(math.nan, T=(1.0, K))
    with pytest.raises(ValueError):
        PhysicalState.of(0.0, w=(1 << 16, Unit.BITS, 16))
    with pytest.raises(ValueError):
        BitWord(4, 16)
    with pytest.raises(ValueError):
        RepresentationPair("dup", (identity_map("T", K), identity_map("T", K, "T2")))


reals = st.floats(-1e6, 1e6, allow_nan=False)


@given(reals, st.booleans(), st.integers(0, (1 << 16) - 1), reals)
def test_round_trip_on_declared_subset(T, on, w, x):
    rep = RepresentationPair("mixed", (
        identity_map("T", K), boolean_map("u", "s"), bitword_map("w", "w", 16),
        affine_map("x", "omega", Unit.METRE, 10.0, 1.0)))
    p = PhysicalState.of(0.5, T=(T, K), u=(float(on), DIM), w=(w, Unit.BITS, 16), x=(x, Unit.METRE),
                         extra=(3.0, DIM))
    back = instantiate(rep, represent(rep, p), time=p.time)
    assert back["T"] == T and back["u"] == float(on) and back["w"] == w
    assert back["x"] == pytest.approx(x, rel=1e-12, abs=1e-12)
    assert "extra" not in back


# -- distance -------------------------------------------------------------------

def test_distance_examples():
    d = Metric.discrete()
    assert distance(d, AbstractState.of(s=True), AbstractState.of(s=True)) == 0.0
    assert distance(d, AbstractState.of(s=True), AbstractState.of(s=False)) == 1.0
    a = Metric.absolute()
    assert distance(a, AbstractState.of(T=19.0), AbstractState.of(T=19.048)) == pytest.approx(0.048)


def test_weighted_sum():
    m = Metric.weighted(T=2.0, s=0.5)
    a = AbstractState.of(T=1.0, s=True, w=BitWord(4, 3))
    b = AbstractState.of(T=1.25, s=False, w=BitWord(4, 5))
    assert distance(m, a, b) == pytest.approx(2.0 * 0.25 + 0.5)


def test_distance_errors():
    with pytest.raises(ShapeMismatch):
        distance(Metric.absolute(), AbstractState.of(T=1.0), AbstractState.of(y=1.0))
    with pytest.raises(KindMismatch):
        distance(Metric.discrete(), AbstractState.of(s=True), AbstractState.of(s=1.0))
    with pytest.raises(KindMismatch):
        distance(Metric.absolute(), AbstractState.of(s=True), AbstractState.of(s=True))
    with pytest.raises(KindMismatch):
        distance(Metric.discrete(), AbstractState.of(w=BitWord(4, 1)), AbstractState.of(w=BitWord(8, 1)))
    with pytest.raises(ShapeMismatch):
        distance(Metric.weighted(z=1.0), AbstractState.of(T=1.0), AbstractState.of(T=1.0))
    with pytest.raises(ValueError):
        Metric.weighted(T=-1.0)


@st.composite
def state_pairs(draw):
    names = draw(st.lists(st.sampled_from("abcdef"), min_size=1, max_size=4, unique=True))
    kinds = {n: draw(st.sampled_from(["real", "bool", "word"])) for n in names}

    def one():
        vals = {}
        for n, k in kinds.items():
            if k == "real":
                vals[n] = draw(reals)
            elif k == "bool":
                vals[n] = draw(st.booleans())
            else:
                vals[n] = BitWord(8, draw(st.integers(0, 255)))
        return AbstractState(vals)

    a, b = one(), one()
    weights = {n: draw(st.floats(0, 10)) for n in names}
    return a, b, weights, all(k == "real" for k in kinds.values())


@given(state_pairs())
def test_metric_axioms(pair):
    a, b, weights, all_real = pair
    metrics = [Metric.discrete(), Metric.weighted(**weights)]
    if all_real:
        metrics.append(Metric.absolute())
    for m in metrics:
        assert distance(m, a, a) == 0.0
        assert distance(m, a, b) == distance(m, b, a)
        assert distance(m, a, b) >= 0.0


# -- squares --------------------------------------------------------------------

def _cooling_square(eps, dt=1.0):
    k, C, Ta = 0.1, 1.0, 10.0
    p0 = PhysicalState.of(0.0, T=(20.0, K))

    def H(p):  # one explicit Euler step
        return p.updated(time=p.time + dt, T=p["T"] + dt * (-k * (p["T"] - Ta)) / C)

    def C_(m):
        return AbstractState.of(T=newton_cooling(m["T"], Ta, k, C, 0.0, 0.0, dt))

    return CommutationSquare(p0, ROOM, C_, H, Metric.absolute(), eps)


def test_exact_digital_square_commutes():
    rep = RepresentationPair("bb", (identity_map("T", K), boolean_map("u", "s")))

    def C(m):
        return AbstractState.of(T=m["T"], s=m["T"] < 19.0 or (m["s"] and m["T"] <= 21.0))

    def H(p):
        return instantiate(rep, C(represent(rep, p)), p.time)

    for T in (15.0, 19.5, 25.0):
        for u in (0.0, 1.0):
            r = check_square(CommutationSquare(PhysicalState.of(0.0, T=(T, K), u=(u, DIM)), rep, C, H,
                                               Metric.discrete(), 0.0))
            assert r.residual == 0.0 and r.commutes


def test_euler_cooling_square_against_exponential():
    expected = abs(19.0 - newton_cooling(20.0, 10.0, 0.1, 1.0, 0.0, 0.0, 1.0))
    r = check_square(_cooling_square(0.1))
    assert r.residual == pytest.approx(expected, rel=1e-12)
    assert r.residual == pytest.approx(0.048, abs=1e-3)
    assert r.commutes
    assert not check_square(_cooling_square(0.01)).commutes


def test_report_keeps_corners():
    r = check_square(_cooling_square(0.1))
    c = r.corners
    assert c.physical_in["T"] == 20.0 and c.physical_out["T"] == 19.0
    assert c.abstract_in["T"] == 20.0 and c.represented_out["T"] == 19.0
    assert c.abstract_out["T"] == pytest.approx(19.0484, abs=1e-4)


def test_negative_epsilon_rejected():
    with pytest.raises(ValueError):
        _cooling_square(-1.0)


@given(st.floats(0, 1), st.floats(0, 1))
def test_monotone_epsilon(e1, e2):
    lo, hi = sorted((e1, e2))
    if check_square(_cooling_square(lo)).commutes:
        assert check_square(_cooling_square(hi)).commutes


@settings(max_examples=50)
@given(st.floats(-100, 100), st.floats(-3, 3), st.floats(-5, 5))
def test_instantiate_compose_gives_zero_residual(T, a, b):
    rep = RepresentationPair("lin", (identity_map("T", K),))

    def C(m):
        return AbstractState.of(T=a * m["T"] + b)

    sq = CommutationSquare(PhysicalState.of(0.0, T=(T, K)), rep, C,
                           lambda p: instantiate(rep, C(represent(rep, p)), p.time + 1), Metric.absolute(), 0.0)
    assert check_square(sq).residual == 0.0


# -- cubes ----------------------------------------------------------------------

def _identity_square(p, rep, name=""):
    return CommutationSquare(p, rep, lambda m: m, lambda q: q, Metric.absolute(), 0.0, name=name)


def test_identity_cube_has_four_zero_reports_in_order():
    p = PhysicalState.of(0.0, T=(20.0, K))
    sq = _identity_square(p, ROOM)
    reports = check_cube(ComputeCube(sq, sq, sq, sq))
    assert [r.square for r in reports] == list(SQUARE_ORDER)
    assert all(r.residual == 0.0 and r.commutes for r in reports)


def test_cube_corner_mismatch():
    p = PhysicalState.of(0.0, T=(20.0, K))
    other = _identity_square(PhysicalState.of(0.0, T=(21.0, K)), ROOM)
    with pytest.raises(CornerMismatch):
        check_cube(ComputeCube(_identity_square(p, ROOM), other, other, other))
    with pytest.raises(CornerMismatch):
        check_cube(ComputeCube(_identity_square(p, ROOM), _identity_square(p, ROOM),
                               other, other))


def test_cube_problem_must_match_encode_input():
    p = PhysicalState.of(0.0, T=(20.0, K))
    sq = _identity_square(p, ROOM)
    assert check_cube(ComputeCube(sq, sq, sq, sq, problem=AbstractState.of(T=20.0)))
    with pytest.raises(CornerMismatch):
        check_cube(ComputeCube(sq, sq, sq, sq, problem=AbstractState.of(T=19.0)))
