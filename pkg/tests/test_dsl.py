from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from artloop.controllers import Topology
from artloop.dynamics import StepMethod
from artloop.scenario import BUILTINS, ParseError, ValidationError, builtin_source, parse_scenario
from artloop.scenario.dsl import serialize, tokenize

MALFORMED = Path(__file__).parent / "malformed"
EXPECTED_POSITIONS = {
    "01-unknown-key.scn": (4, 7),
    "02-unterminated-string.scn": (1, 10),
    "03-missing-equals.scn": (2, 20),
    "04-unclosed-block.scn": (3, 12),
    "05-bad-number.scn": (2, 20),
    "06-duplicate-key.scn": (6, 3),
    "07-no-header.scn": (2, 1),
    "08-missing-required.scn": (2, 58),
    "09-unknown-plant.scn": (3, 7),
    "10-stray-character.scn": (3, 32),
}

MINIMAL = """\
scenario "minimal"
plant thermal { T0=18.0  T_amb=10.0  C_th=1.0  k_loss=0.1  P_max=2.0 }
controller bangbang { T_re=20.0  h=1.0 }
run { dt=0.1  cycles=10  integrator=euler }
epsilon { plant=0.1 }
"""


def with_line(text, old, new):
    assert old in text
    return text.replace(old, new)


def test_minimal_source():
    sc = parse_scenario(MINIMAL)
    assert sc.name == "minimal" and sc.topology is Topology.SERIAL
    assert sc.plant.kind == "thermal" and sc.plant["T0"] == 18.0 and sc.plant["P_max"] == 2.0
    assert sc.controller.kind == "bangbang" and sc.reference == 20.0
    assert (sc.dt, sc.cycles, sc.integrator, sc.seed) == (0.1, 10, StepMethod.EULER, 0)
    assert sc.epsilon.as_dict() == {"encode": 0.0, "controller": 0.0, "decode": 0.0, "plant": 0.1}


def test_unknown_key_is_named():
    with pytest.raises(ParseError) as e:
        parse_scenario(with_line(MINIMAL, "dt=0.1", "dtt=0.1"))
    assert "dtt" in str(e.value) and (e.value.line, e.value.column) == (4, 7)


@pytest.mark.parametrize("name", sorted(EXPECTED_POSITIONS))
def test_malformed_corpus(name):
    with pytest.raises(ParseError) as e:
        parse_scenario((MALFORMED / name).read_text())
    assert (e.value.line, e.value.column) == EXPECTED_POSITIONS[name]
    assert str(e.value).startswith(f"line {e.value.line}, column {e.value.column}: ")


def test_corpus_is_complete():
    assert sorted(p.name for p in MALFORMED.glob("*.scn")) == sorted(EXPECTED_POSITIONS)


@pytest.mark.parametrize("name", BUILTINS)
def test_builtin_round_trip(name):
    sc = parse_scenario(builtin_source(name))
    text = serialize(sc)
    assert parse_scenario(text) == sc
    assert serialize(parse_scenario(text)) == text


@settings(max_examples=60)
@given(st.text(st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=20),
       st.floats(1e-6, 10, allow_subnormal=False), st.integers(1, 10**6), st.floats(-50, 50),
       st.floats(0, 1))
def test_round_trip_fixpoint(name, dt, cycles, T0, eps):
    src = MINIMAL.replace('"minimal"', '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"')
    src = src.replace("dt=0.1", f"dt={dt!r}").replace("cycles=10", f"cycles={cycles}")
    src = src.replace("T0=18.0", f"T0={T0!r}").replace("plant=0.1", f"plant={eps!r}")
    sc = parse_scenario(src)
    assert sc.name == name and sc.dt == dt and sc.plant["T0"] == T0
    assert parse_scenario(serialize(sc)) == sc


def test_comments_and_layout_are_free():
    src = "# header\n" + MINIMAL.replace("{ T_re=20.0  h=1.0 }", "{\n  T_re = 20.0   # set point\n  h=1\n}")
    assert parse_scenario(src).controller["h"] == 1.0


def test_tokens_carry_positions():
    toks = tokenize('plant  thermal {\n  T0=-1.5e1 }')
    assert [(t.kind, t.line, t.column) for t in toks[:3]] == [("IDENT", 1, 1), ("IDENT", 1, 8), ("LBRACE", 1, 16)]
    num = toks[5]
    assert num.value == -15.0 and (num.line, num.column) == (2, 6)


@pytest.mark.parametrize("old,new,field", [
    ("C_th=1.0", "C_th=0.0", "C_th"),
    ("k_loss=0.1", "k_loss=-0.1", "k_loss"),
    ("dt=0.1", "dt=0", "dt"),
    ("cycles=10", "cycles=0", "cycles"),
    ("plant=0.1", "plant=-1", "plant"),
    ("bangbang { T_re=20.0  h=1.0 }", "governor { l1=1 beta=1 c0=0.5 c1=-0.4 x_re=0.25 valve_gain=1 v0=0.4 theta0=0.5 }",
     "controller"),
    ("run {", "topology parallel\nrun {", "topology"),
])
def test_validation_errors(old, new, field):
    with pytest.raises(ValidationError) as e:
        parse_scenario(with_line(MINIMAL, old, new))
    assert field in e.value.field


def test_disturbances():
    src = MINIMAL + "disturb { at=5 set=T_amb value=0.0 }\ndisturb { at=2 set=P_max value=1.0 }\n"
    sc = parse_scenario(src)
    assert [(d.at, d.param, d.value) for d in sc.disturbances] == [(2, "P_max", 1.0), (5, "T_amb", 0.0)]
    with pytest.raises(ValidationError):
        parse_scenario(MINIMAL + "disturb { at=10 set=T_amb value=0.0 }\n")
    with pytest.raises(ValidationError):
        parse_scenario(MINIMAL + "disturb { at=1 set=T0 value=0.0 }\n")


def test_missing_block_points_at_end_of_file():
    src = MINIMAL.replace("epsilon { plant=0.1 }\n", "")
    with pytest.raises(ParseError) as e:
        parse_scenario(src)
    assert "epsilon" in e.value.message and e.value.line == 5


def test_overrides():
    sc = parse_scenario(MINIMAL, ["run.cycles=3", "plant.T0=25", "epsilon.decode=0.5", "topology=serial"])
    assert sc.cycles == 3 and sc.plant["T0"] == 25.0 and sc.epsilon.decode == 0.5
    for bad in ("run.dtt=1", "nothing", "plant.T0=", "run.cycles=1 2", "disturb.at=1"):
        with pytest.raises(ParseError):
            parse_scenario(MINIMAL, [bad])
    with pytest.raises(ValidationError):
        parse_scenario(MINIMAL, ["run.dt=-1"])
