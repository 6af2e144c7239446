import csv
import io
import json
import subprocess
import sys

import pytest

from artloop.cli import execute
from artloop.scenario import BUILTINS, load_builtin, run, verify
from artloop.traceio import CSV_COLUMNS, TraceFormatError, export_trace, from_json, to_csv, to_json

HEADER = "cycle,t,y,e_or_c,s,res_encode,res_controller,res_decode,res_plant"


@pytest.fixture(scope="module")
def short_trace():
    return run(load_builtin("thermostat-digital", ["run.cycles=50", "run.integrator=euler"]))


def test_builtin_list_is_exact():
    assert set(BUILTINS) == {"thermostat-digital", "thermostat-bimetal", "governor", "car-heater-human", "agc-parity"}


def test_csv_header_and_rows(short_trace):
    text = to_csv(short_trace)
    lines = text.splitlines()
    assert lines[0] == HEADER == ",".join(CSV_COLUMNS)
    assert len(lines) == 51
    one = run(load_builtin("thermostat-digital", ["run.cycles=1"]))
    assert len(to_csv(one).splitlines()) == 2


def test_csv_matches_json_to_nine_digits(short_trace):
    rows = list(csv.DictReader(io.StringIO(to_csv(short_trace))))
    doc = json.loads(to_json(short_trace))
    for row, rec in zip(rows, doc["records"]):
        for k, rep in zip(("res_encode", "res_controller", "res_decode", "res_plant"), rec["reports"]):
            assert float(row[k]) == pytest.approx(rep["residual"], rel=1e-9, abs=1e-300)
        assert float(row["y"]) == pytest.approx(rec["y"], rel=1e-9)


def test_json_round_trip(short_trace):
    back = from_json(to_json(short_trace))
    assert back.records == short_trace.records and back.verdict == short_trace.verdict
    assert verify(back) == verify(short_trace)
    assert from_json(export_trace(back, "json").decode()).records == back.records


def test_json_round_trip_with_bit_words():
    t = run(load_builtin("agc-parity", ["run.cycles=30"]))
    assert from_json(to_json(t)).records == t.records


def test_json_rejects_tampering(short_trace):
    doc = json.loads(to_json(short_trace))
    doc["scenario"] = doc["scenario"].replace("cycles=50", "cycles=51")
    with pytest.raises(TraceFormatError):
        from_json(json.dumps(doc))
    with pytest.raises(TraceFormatError):
        from_json("{not json")
    with pytest.raises(TraceFormatError):
        from_json(json.dumps({"format": "other"}))
    with pytest.raises(ValueError):
        export_trace(short_trace, "xml")


# -- exit codes -----------------------------------------------------------------

def test_run_builtin_to_csv(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code = execute(["run", "--builtin", "thermostat-digital", "--format", "csv", "--out", str(out),
                    "--override", "run.cycles=100"])
    assert code == 0
    assert out.read_text().splitlines()[0] == HEADER


def test_verify_tight_epsilon_fails_with_location(tmp_path, capsys):
    out = tmp_path / "t.json"
    assert execute(["run", "--builtin", "thermostat-digital", "--out", str(out),
                    "--override", "run.cycles=20", "--override", "run.integrator=euler"]) == 0
    capsys.readouterr()
    assert execute(["verify", str(out), "--override", "epsilon.plant=1e-9"]) == 1
    err = capsys.readouterr().err
    assert "cycle 0" in err and "plant" in err
    assert execute(["verify", str(out)]) == 0


def test_report(tmp_path, capsys):
    assert execute(["report", "--builtin", "agc-parity", "--override", "run.cycles=40"]) == 0
    text = capsys.readouterr().out
    assert "control-cycle" in text and "PASS" in text
    for sq in ("encode", "controller", "decode", "plant"):
        assert sq in text


def test_list_builtins(capsys):
    assert execute(["list-builtins"]) == 0
    assert capsys.readouterr().out.split() == list(BUILTINS)


@pytest.mark.parametrize("argv", [
    ["run", "missing.scn"],
    ["run", "--builtin", "no-such-thing"],
    ["run", "--builtin", "governor", "--override", "run.dtt=1"],
    ["run", "--builtin", "governor", "--override", "run.dt=-1"],
    [],
    ["frobnicate"],
    ["verify", "missing.json"],
])
def test_errors_exit_two(argv, capsys):
    assert execute(argv) == 2


def test_verify_rejects_non_epsilon_override(tmp_path, short_trace, capsys):
    p = tmp_path / "t.json"
    p.write_text(to_json(short_trace))
    assert execute(["verify", str(p), "--override", "run.cycles=3"]) == 2
    assert execute(["verify", str(p), "--override", "epsilon.plant=-1"]) == 2


def test_parse_error_names_position(tmp_path, capsys):
    p = tmp_path / "bad.scn"
    p.write_text('scenario "x"\nplant thermal { T0=1 ; }\n')
    assert execute(["run", str(p)]) == 2
    assert "line 2, column 22" in capsys.readouterr().err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "artloop", "list-builtins"], capture_output=True, text=True)
    assert r.returncode == 0 and "governor" in r.stdout
