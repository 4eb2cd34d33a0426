"""Text, JSON and CSV rendering of classification results."""

from __future__ import annotations

import csv
import io
import json

CANDIDATE_COLUMNS = (
    "q", "verdict", "scope_note", "n_max", "y_bound",
    "n", "M", "lloyd_passes", "lloyd_roots", "lloyd_discriminant",
)
RANGE_COLUMNS = ("q", "verdict", "scope_note", "n_candidates", "candidates", "n_solutions", "n_curves", "seconds")


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def _candidate_rows(rep):
    base = {
        "q": rep.q,
        "verdict": rep.verdict.value if rep.verdict else "",
        "scope_note": rep.scope_note or "",
        "n_max": rep.n_max if rep.n_max is not None else "",
        "y_bound": rep.y_bound if rep.y_bound is not None else "",
    }
    if not rep.candidates:
        return [dict(base, n="", M="", lloyd_passes="", lloyd_roots="", lloyd_discriminant="")]
    return [
        dict(
            base,
            n=c.n,
            M=str(c.M),
            lloyd_passes=c.lloyd_passes,
            lloyd_roots=" ".join(c.lloyd_roots),
            lloyd_discriminant=c.lloyd_discriminant,
        )
        for c in rep.candidates
    ]


def render_report(rep, fmt: str, timing: bool = True) -> str:
    if fmt == "json":
        return json.dumps(rep.to_dict(timing=timing), indent=2)
    if fmt == "csv":
        return _csv(_candidate_rows(rep), CANDIDATE_COLUMNS)
    if rep.skipped:
        return f"q={rep.q}: skipped ({rep.scope_note})"
    eq = rep.equation
    lines = [
        f"q={rep.q}: x^2 + ({eq['b']}) = {eq['c']}*y, y over {eq['support']}"
        + (" [halved]" if eq["halved"] else ""),
        f"  bound: n_max={rep.n_max}, y_bound={rep.y_bound}",
        "  solutions: " + (", ".join(f"(x={s['x']}, y={s['y']})" for s in rep.solutions) or "none"),
    ]
    for c in rep.candidates:
        status = "PASSES Lloyd" if c.lloyd_passes else "eliminated by Lloyd"
        lines.append(
            f"  candidate n={c.n}, M={c.M}: {status} (roots {', '.join(c.lloyd_roots) or 'none'};"
            f" disc {c.lloyd_discriminant})"
        )
    lines.append(f"  curves: {len(rep.curves)} (d, k, a_S)")
    for cv in rep.curves:
        lines.append(f"    d={cv['d']} k={cv['k']} a_S={cv['a_S']}")
    for d, info in sorted(rep.external_points.items()):
        lines.append(
            f"  external points d={d}: {info['points']} point(s), complete={info['complete']}"
        )
    lines.extend(f"  note: {n}" for n in rep.notes)
    verdict = rep.verdict.value
    if verdict == "SURVIVING_CANDIDATE":
        verdict = "!!! SURVIVING_CANDIDATE !!!"
    lines.append(f"  verdict: {verdict}")
    if timing:
        lines.append(f"  time: {rep.seconds:.3f}s")
    return "\n".join(lines)


def _range_rows(result):
    for rep in result.reports:
        yield {
            "q": rep.q,
            "verdict": rep.verdict.value if rep.verdict else "",
            "scope_note": rep.scope_note or "",
            "n_candidates": len(rep.candidates),
            "candidates": " ".join(f"{c.n}:{c.M}" for c in rep.candidates),
            "n_solutions": len(rep.solutions),
            "n_curves": len(rep.curves),
            "seconds": f"{rep.seconds:.4f}",
        }


def render_range(result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(
            {"reports": [r.to_dict() for r in result.reports], "aggregate": result.aggregate},
            indent=2,
        )
    if fmt == "csv":
        return _csv(_range_rows(result), RANGE_COLUMNS)
    agg = result.aggregate
    lines = []
    for row in _range_rows(result):
        if row["scope_note"]:
            continue
        lines.append(f"q={row['q']:>4}  {row['verdict']:<36} {row['candidates']}")
    lines.append(f"classified {agg['classified']} q in [{agg['q_from']}, {agg['q_to']}], "
                 f"skipped {len(agg['skipped'])}")
    for v, count in agg["verdict_counts"].items():
        lines.append(f"  {v}: {count}")
    lines.append(f"  q with candidates: {agg['q_with_candidates']}")
    for label, qs in agg["coverage"].items():
        lines.append(f"  coverage [{label}]: {len(qs)} q")
    if agg["aborted_at"] is not None:
        lines.append(f"!!! ABORTED: SURVIVING_CANDIDATE at q={agg['aborted_at']} !!!")
    return "\n".join(lines)


def render_table2(check, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"passed": check.passed, "rows": check.rows}, indent=2)
    if fmt == "csv":
        rows = [
            {
                "q": r["q"],
                "expected_n": r["expected"]["n"],
                "expected_M": r["expected"]["M"],
                "found": " ".join(f"{f['n']}:{f['M']}" for f in r["found"]),
                "lloyd_eliminated": r["lloyd_eliminated"],
                "ok": r["ok"],
                "diagnostic": r["diagnostic"],
            }
            for r in check.rows
        ]
        return _csv(rows, ("q", "expected_n", "expected_M", "found", "lloyd_eliminated", "ok", "diagnostic"))
    lines = []
    for r in check.rows:
        mark = "PASS" if r["ok"] else "FAIL"
        lines.append(
            f"{mark} q={r['q']}: expected n={r['expected']['n']} M={r['expected']['M']}"
            + (f"  [{r['diagnostic']}]" if r["diagnostic"] else "")
        )
    matched = sum(r["ok"] for r in check.rows)
    lines.append(f"{'PASS' if check.passed else 'FAIL'}: {matched}/{len(check.rows)} rows matched")
    return "\n".join(lines)
