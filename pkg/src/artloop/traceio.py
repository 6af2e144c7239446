"""Trace persistence: plot-ready CSV and a lossless JSON form."""
from __future__ import annotations

import csv
import io
import json

from .core import (
    AbstractState, BitWord, CommutationReport, Corners, PhysicalState, Quantity, SQUARE_ORDER, Unit,
)
from .scenario.dsl import parse_scenario, serialize
from .scenario.harness import CycleRecord, Trace, _verdict, scenario_hash

CSV_COLUMNS = ("cycle", "t", "y", "e_or_c", "s", "res_encode", "res_controller", "res_decode", "res_plant")
FORMAT_TAG = "artloop-trace/1"


class TraceFormatError(ValueError):
    pass


def _num(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, BitWord):
        return str(v.value)
    return format(v, ".12g")


def to_csv(trace: Trace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in trace.records:
        w.writerow([r.cycle, _num(r.t), _num(r.y), _num(r.e_or_c), _num(r.s)]
                   + [_num(rep.residual) for rep in r.reports])
    return buf.getvalue()


# -- JSON -----------------------------------------------------------------------

def _phys(p: PhysicalState) -> dict:
    qs = {}
    for name, q in p.quantities.items():
        d = {"value": q.value, "unit": q.unit.value}
        if q.width is not None:
            d["width"] = q.width
        qs[name] = d
    return {"time": p.time, "quantities": qs}


def _unphys(d: dict) -> PhysicalState:
    return PhysicalState(d["time"], {n: Quantity(q["value"], Unit(q["unit"]), q.get("width"))
                                     for n, q in d["quantities"].items()})


def _abs(m: AbstractState) -> dict:
    out = {}
    for n, v in m.values.items():
        out[n] = {"width": v.width, "bits": v.value} if isinstance(v, BitWord) else v
    return out


def _unabs(d: dict) -> AbstractState:
    return AbstractState({n: BitWord(v["width"], v["bits"]) if isinstance(v, dict) else v
                          for n, v in d.items()})


def _report(rep: CommutationReport, corners: bool) -> dict:
    d = {"square": rep.square, "residual": rep.residual, "epsilon": rep.epsilon,
         "commutes": rep.commutes}
    if corners and rep.corners is not None:
        c = rep.corners
        d["corners"] = {"physical_in": _phys(c.physical_in), "abstract_in": _abs(c.abstract_in),
                        "physical_out": _phys(c.physical_out), "abstract_out": _abs(c.abstract_out),
                        "represented_out": _abs(c.represented_out)}
    return d


def _unreport(d: dict) -> CommutationReport:
    c = d.get("corners")
    corners = None
    if c is not None:
        corners = Corners(_unphys(c["physical_in"]), _unabs(c["abstract_in"]), _unphys(c["physical_out"]),
                          _unabs(c["abstract_out"]), _unabs(c["represented_out"]))
    return CommutationReport(d["residual"], d["epsilon"], corners, d["square"])


def to_json(trace: Trace, corners: bool = True) -> str:
    doc = {
        "format": FORMAT_TAG,
        "name": trace.name,
        "scenario_hash": trace.scenario_hash,
        "scenario": serialize(trace.scenario),
        "verdict": {"passed": trace.verdict.passed,
                    "first_failure": None if trace.verdict.first_failure is None else
                    {"cycle": trace.verdict.first_failure[0], "square": trace.verdict.first_failure[1]}},
        "records": [
            {"cycle": r.cycle, "t": r.t, "y": r.y, "e_or_c": r.e_or_c, "s": r.s,
             "plant_state": _phys(r.plant_state), "controller_state": _phys(r.controller_state),
             "reports": [_report(rep, corners) for rep in r.reports]}
            for r in trace.records
        ],
    }
    return json.dumps(doc, allow_nan=False)


def from_json(text: str) -> Trace:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise TraceFormatError(f"not a JSON trace: {e}") from None
    if not isinstance(doc, dict) or doc.get("format") != FORMAT_TAG:
        raise TraceFormatError(f"expected a {FORMAT_TAG} document")
    try:
        sc = parse_scenario(doc["scenario"])
        if scenario_hash(sc) != doc["scenario_hash"]:
            raise TraceFormatError("embedded scenario does not match its hash")
        records = []
        for r in doc["records"]:
            reps = tuple(_unreport(x) for x in r["reports"])
            if tuple(x.square for x in reps) != SQUARE_ORDER:
                raise TraceFormatError(f"cycle {r['cycle']}: reports out of order")
            records.append(CycleRecord(r["cycle"], r["t"], r["y"], r["e_or_c"], r["s"],
                                       _unphys(r["plant_state"]), _unphys(r["controller_state"]), reps))
    except (KeyError, TypeError) as e:
        raise TraceFormatError(f"malformed trace: missing or mistyped {e}") from None
    records = tuple(records)
    return Trace(doc["name"], doc["scenario_hash"], sc, records, _verdict(records))


def export_trace(trace: Trace, fmt: str) -> bytes:
    if fmt == "csv":
        return to_csv(trace).encode()
    if fmt == "json":
        return to_json(trace).encode()
    raise ValueError(f"unknown trace format {fmt!r}")


__all__ = ["CSV_COLUMNS", "to_csv", "to_json", "from_json", "export_trace", "TraceFormatError"]
