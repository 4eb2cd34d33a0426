"""Line-delimited JSON formats for Mordell curve export and integral point import.

Curve records (one per line, keys in this order)::

    {"q": 15, "b": -34, "c": 2, "d": 30, "k": 30600, "a_S": 26438400}

``a_S`` is null when the factorization ceiling was exceeded.

Point records::

    {"q": 15, "d": 30, "points": [[270, 4440]], "complete": false, "provenance": "..."}

``complete`` asserts that ``points`` lists every integral point of the curve
with X > 0 (points with X <= 0 never lift). Several records for the same
(q, d) are merged; the merged set is complete if any record says so.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .arithmetic import DEFAULT_FACT_CEILING
from .code_equations import Alphabet, OutOfScopeAlphabet, to_rn_equation
from .rn_solver import IntegralPoint, MordellCurve, curve_inventory, enumerate_d

CURVE_FIELDS = ("q", "b", "c", "d", "k", "a_S")
POINT_FIELDS = ("q", "d", "points", "complete", "provenance")


class PointFileError(ValueError):
    pass


@dataclass(frozen=True)
class PointSet:
    q: int
    d: int
    points: tuple[IntegralPoint, ...]
    complete: bool
    provenance: str


def curve_records(q: int, ceiling: int = DEFAULT_FACT_CEILING) -> list[dict]:
    eq = to_rn_equation(Alphabet.of(q))
    return [
        dict(zip(CURVE_FIELDS, (q, eq.b, eq.c, cv.d, cv.k, cv.a_S)))
        for cv in curve_inventory(eq, ceiling)
    ]


def write_curves(qs, path, ceiling: int = DEFAULT_FACT_CEILING) -> int:
    lines = [json.dumps(rec) for q in qs for rec in curve_records(q, ceiling)]
    Path(path).write_text("".join(line + "\n" for line in lines))
    return len(lines)


def _as_int(value, what: str, lineno: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise PointFileError(f"line {lineno}: {what} must be an integer, got {value!r}")
    return value


def _parse_record(raw: str, lineno: int) -> PointSet:
    try:
        rec = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise PointFileError(f"line {lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(rec, dict):
        raise PointFileError(f"line {lineno}: record must be an object")
    unknown = set(rec) - set(POINT_FIELDS)
    if unknown:
        raise PointFileError(f"line {lineno}: unknown fields {sorted(unknown)}")
    for key in ("q", "d", "points"):
        if key not in rec:
            raise PointFileError(f"line {lineno}: missing field {key!r}")
    q = _as_int(rec["q"], "q", lineno)
    d = _as_int(rec["d"], "d", lineno)
    complete = rec.get("complete", False)
    provenance = rec.get("provenance", "")
    if not isinstance(complete, bool):
        raise PointFileError(f"line {lineno}: complete must be true/false")
    if not isinstance(provenance, str):
        raise PointFileError(f"line {lineno}: provenance must be a string")
    if not isinstance(rec["points"], list):
        raise PointFileError(f"line {lineno}: points must be a list of [X, Y] pairs")
    pts = []
    for pair in rec["points"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise PointFileError(f"line {lineno}: bad point {pair!r}")
        pts.append(IntegralPoint(_as_int(pair[0], "X", lineno), _as_int(pair[1], "Y", lineno)))

    try:
        eq = to_rn_equation(Alphabet.of(q))
    except OutOfScopeAlphabet as exc:
        raise PointFileError(f"line {lineno}: {exc}") from None
    if d not in enumerate_d(eq):
        raise PointFileError(f"line {lineno}: d={d} is not a curve index for q={q}")
    curve = MordellCurve(d, -d * d * eq.b, None)
    for pt in pts:
        if not curve.contains(pt):
            raise PointFileError(
                f"line {lineno}: point ({pt.X}, {pt.Y}) is not on Y^2 = X^3 + {curve.k} (q={q}, d={d})"
            )
    return PointSet(q, d, tuple(pts), complete, provenance)


def _merge_into(out: dict[int, dict[int, PointSet]], ps: PointSet) -> None:
    old = out.setdefault(ps.q, {}).get(ps.d)
    if old is not None:
        ps = PointSet(
            ps.q,
            ps.d,
            tuple(dict.fromkeys(old.points + ps.points)),
            old.complete or ps.complete,
            "; ".join(p for p in (old.provenance, ps.provenance) if p),
        )
    out[ps.q][ps.d] = ps


def load_points(path) -> dict[int, dict[int, PointSet]]:
    """Parse and verify a point file; any bad record rejects the whole file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise PointFileError(f"cannot read point file {path}: {exc}") from None
    records = [
        _parse_record(raw, lineno)
        for lineno, raw in enumerate(text.splitlines(), 1)
        if raw.strip()
    ]
    merged: dict[int, dict[int, PointSet]] = {}
    for ps in records:
        _merge_into(merged, ps)
    return merged


def merge_point_maps(*maps) -> dict[int, dict[int, PointSet]]:
    out: dict[int, dict[int, PointSet]] = {}
    for m in maps:
        for per_d in m.values():
            for ps in per_d.values():
                _merge_into(out, ps)
    return out
