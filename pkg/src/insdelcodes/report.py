"""Serialization of reports to JSON, CSV and a human-readable summary.

Every JSON document carries ``schema_version`` and ``kind``.  Wall-clock data
lives only under the ``timing`` key so that two identical runs produce
identical documents once ``timing`` is dropped.  See ``docs/schema.md``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict
from typing import Any

from .channel import AMBIGUOUS, ChannelTrace, EditEvent
from .gf import FieldElement, FieldSpec
from .insdel import DistanceReport, check_bounds
from .lincode import LinearCode
from .rs2opt import TheoremBVerdict

SCHEMA_VERSION = 1

CSV_FIELDS = {
    "distance_report": [
        "q", "n", "k", "method", "exact", "d_hamming", "d_insdel",
        "bound_improved", "bound_singleton", "meets_improved", "meets_singleton",
        "pairs_examined",
    ],
    "theorem_b_verdict": [
        "p", "e", "n", "cond1", "top_sum", "cond2", "diff_count", "diff_target",
        "case6_certified", "claimed_distance", "distance",
    ],
    "traces": ["seed", "inserts", "deletes", "received_length", "ambiguous", "success"],
}


def _word(word) -> list[list[int]]:
    return [list(x.coeffs) for x in word]


def _unword(spec: FieldSpec, data) -> tuple[FieldElement, ...]:
    return tuple(spec(c) for c in data)


# --- dict conversion -------------------------------------------------------------

def distance_report_to_dict(r: DistanceReport) -> dict:
    v = check_bounds(r)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "distance_report",
        "code": r.code.to_json(),
        "n": r.n,
        "k": r.k,
        "method": r.method,
        "exact": r.exact,
        "d_hamming": r.d_hamming,
        "d_insdel": r.d_insdel,
        "bound_improved": r.bound_improved,
        "bound_singleton": r.bound_singleton,
        "bounds": {
            "singleton_ok": v.singleton_ok,
            "improved_applicable": v.improved_applicable,
            "improved_ok": v.improved_ok,
            "meets_improved": v.meets_improved,
            "meets_singleton": v.meets_singleton,
            "violations": list(v.violations),
        },
        "witness": {
            "a": _word(r.witness[0]),
            "b": _word(r.witness[1]),
            "messages": list(r.witness_messages) if r.witness_messages else None,
        },
        "pairs_examined": r.pairs_examined,
        "context": r.context,
        "timing": {"elapsed": r.elapsed},
    }


def distance_report_from_dict(d: dict) -> DistanceReport:
    code = LinearCode.from_json(d["code"])
    w = d["witness"]
    return DistanceReport(
        code=code,
        d_hamming=d["d_hamming"],
        d_insdel=d["d_insdel"],
        witness=(_unword(code.spec, w["a"]), _unword(code.spec, w["b"])),
        method=d["method"],
        pairs_examined=d["pairs_examined"],
        elapsed=d.get("timing", {}).get("elapsed", 0.0),
        witness_messages=tuple(w["messages"]) if w.get("messages") is not None else None,
        exact=d["exact"],
        context=d.get("context", {}),
    )


def verdict_to_dict(v: TheoremBVerdict) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "kind": "theorem_b_verdict", "n": v.n}
    out.update(asdict(v))
    out["exps"] = list(v.exps)
    out["holds"] = v.holds
    return out


def verdict_from_dict(d: dict) -> TheoremBVerdict:
    keys = TheoremBVerdict.__dataclass_fields__
    kw = {k: d[k] for k in keys if k in d}
    kw["exps"] = tuple(kw["exps"])
    return TheoremBVerdict(**kw)


def trace_to_dict(t: ChannelTrace) -> dict:
    return {
        "seed": t.seed,
        "sent": _word(t.sent),
        "script": [
            {"kind": ev.kind, "position": ev.position,
             "symbol": list(ev.symbol.coeffs) if ev.symbol is not None else None}
            for ev in t.script
        ],
        "received": _word(t.received),
        "decoded": AMBIGUOUS if t.decoded == AMBIGUOUS else (_word(t.decoded) if t.decoded is not None else None),
        "success": t.success,
    }


def trace_from_dict(spec: FieldSpec, d: dict) -> ChannelTrace:
    script = tuple(
        EditEvent(ev["kind"], ev["position"], spec(ev["symbol"]) if ev["symbol"] is not None else None)
        for ev in d["script"]
    )
    dec = d["decoded"]
    if dec is not None and dec != AMBIGUOUS:
        dec = _unword(spec, dec)
    return ChannelTrace(
        sent=_unword(spec, d["sent"]),
        script=script,
        received=_unword(spec, d["received"]),
        seed=d["seed"],
        decoded=dec,
        success=d["success"],
    )


def traces_to_dict(spec: FieldSpec, traces: list[ChannelTrace]) -> dict:
    ok = sum(bool(t.success) for t in traces)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "traces",
        "field": spec.to_json(),
        "traces": [trace_to_dict(t) for t in traces],
        "summary": {
            "trials": len(traces),
            "successes": ok,
            "ambiguous": sum(t.decoded == AMBIGUOUS for t in traces),
            "success_rate": ok / len(traces) if traces else 1.0,
        },
    }


def to_dict(obj: Any, spec: FieldSpec | None = None) -> dict:
    if isinstance(obj, DistanceReport):
        return distance_report_to_dict(obj)
    if isinstance(obj, TheoremBVerdict):
        return verdict_to_dict(obj)
    if isinstance(obj, list) and all(isinstance(t, ChannelTrace) for t in obj):
        if spec is None:
            if not obj:
                raise ValueError("need a field to serialise an empty trace list")
            spec = obj[0].sent[0].spec
        return traces_to_dict(spec, obj)
    if isinstance(obj, dict):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def from_dict(d: dict) -> Any:
    kind = d.get("kind")
    if d.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {d.get('schema_version')!r}")
    if kind == "distance_report":
        return distance_report_from_dict(d)
    if kind == "theorem_b_verdict":
        return verdict_from_dict(d)
    if kind == "traces":
        spec = FieldSpec.from_json(d["field"])
        return [trace_from_dict(spec, t) for t in d["traces"]]
    raise ValueError(f"unknown report kind {kind!r}")


# --- text formats ------------------------------------------------------------------

def _csv_row(d: dict) -> list[dict]:
    kind = d["kind"]
    if kind == "distance_report":
        flat = dict(d, q=d["code"]["field"]["p"] ** d["code"]["field"]["e"], **d["bounds"])
        return [flat]
    if kind == "theorem_b_verdict":
        return [d]
    if kind == "traces":
        return [
            {
                "seed": t["seed"],
                "inserts": sum(ev["kind"] == "insert" for ev in t["script"]),
                "deletes": sum(ev["kind"] == "delete" for ev in t["script"]),
                "received_length": len(t["received"]),
                "ambiguous": t["decoded"] == AMBIGUOUS,
                "success": t["success"],
            }
            for t in d["traces"]
        ]
    raise ValueError(f"no CSV layout for kind {kind!r}")


def _human(d: dict) -> str:
    kind = d["kind"]
    if kind == "distance_report":
        b = d["bounds"]
        q = d["code"]["field"]["p"] ** d["code"]["field"]["e"]
        rel = "=" if d["exact"] else "<="
        lines = [
            f"[{d['n']}, {d['k']}] code over GF({q}), method {d['method']}",
            f"  d(C) {rel} {d['d_insdel']}    d_H(C) = {d['d_hamming']}",
            f"  Singleton bound 2n-2k+2 = {d['bound_singleton']}: "
            + ("met" if b["meets_singleton"] else "holds" if b["singleton_ok"] else "VIOLATED"),
        ]
        if b["improved_applicable"]:
            lines.append(
                f"  improved bound 2n-2k = {d['bound_improved']}: "
                + ("met" if b["meets_improved"] else "holds" if b["improved_ok"] else "VIOLATED")
            )
        else:
            lines.append(f"  improved bound 2n-2k = {d['bound_improved']}: not applicable (needs n > k >= 2)")
        lines.append(f"  pairs examined: {d['pairs_examined']}")
        return "\n".join(lines) + "\n"
    if kind == "theorem_b_verdict":
        lines = [
            f"exponents {d['exps']} over GF({d['p']}^{d['e']})",
            f"  condition (1): i_(n-1) + i_n = {d['top_sum']} < e = {d['e']}: {d['cond1']}",
            f"  condition (2): |D| = {d['diff_count']} of {d['diff_target']}: {d['cond2']}",
        ]
        if d["claimed_distance"] is not None:
            lines.append(f"  claimed d(C) = {d['claimed_distance']}; determinant certificate: {d['case6_certified']}")
        if d["distance"] is not None:
            lines.append(f"  computed d(C) = {d['distance']}")
        return "\n".join(lines) + "\n"
    if kind == "traces":
        s = d["summary"]
        return f"{s['successes']}/{s['trials']} decoded correctly ({s['ambiguous']} ambiguous)\n"
    return json.dumps(d, indent=2, sort_keys=True) + "\n"


def emit(obj: Any, fmt: str = "json", spec: FieldSpec | None = None) -> str:
    d = to_dict(obj, spec)
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        fields = CSV_FIELDS[d["kind"]]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        writer.writerows(_csv_row(d))
        return buf.getvalue()
    if fmt == "human":
        return _human(d)
    raise ValueError(f"unknown format {fmt!r}")


def parse(text: str) -> Any:
    return from_dict(json.loads(text))


def strip_timing(d: Any) -> Any:
    """Drop every ``timing`` entry, recursively, for determinism comparisons."""
    if isinstance(d, dict):
        return {k: strip_timing(v) for k, v in d.items() if k != "timing"}
    if isinstance(d, list):
        return [strip_timing(v) for v in d]
    return d
