"""End-to-end classification of alphabet sizes q, single or in ranges."""

from __future__ import annotations

import enum
import hashlib
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .arithmetic import DEFAULT_FACT_CEILING, FactoredInteger
from .code_equations import (
    Alphabet,
    CodeCandidate,
    OutOfScopeAlphabet,
    sphere_size,
    to_rn_equation,
)
from .curvefile import PointSet, load_points, merge_point_maps
from .lloyd import check_two_integer_roots
from .rn_solver import (
    DEFAULT_SIEVE_MODULI,
    RNSolution,
    curve_inventory,
    enumerate_d,
    lift_integral_point,
    solutions_to_candidates,
    solve_bounded,
)

log = logging.getLogger(__name__)

REPORT_SCHEMA_VERSION = "1.0"

# (q, n, exponents of M) for every q <= 200 with a solution at n >= 5
TABLE2 = (
    (15, 11, {3: 4, 5: 10}),
    (21, 52, {3: 40, 7: 52}),
    (46, 93, {2: 79, 23: 91}),
)

# no unconditional classification is known for these two q <= 200
UNRESOLVED_Q = (94, 166)


class Verdict(str, enum.Enum):
    NO_CANDIDATES_UP_TO_BOUND = "NO_CANDIDATES_UP_TO_BOUND"
    ALL_CANDIDATES_ELIMINATED_BY_LLOYD = "ALL_CANDIDATES_ELIMINATED_BY_LLOYD"
    UNCONDITIONAL_NONEXISTENCE = "UNCONDITIONAL_NONEXISTENCE"
    SURVIVING_CANDIDATE = "SURVIVING_CANDIDATE"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    n_max: int = 10**6
    fact_ceiling: int = DEFAULT_FACT_CEILING
    sieve_moduli: tuple[int, ...] = DEFAULT_SIEVE_MODULI
    point_files: tuple[str, ...] = ()
    output_format: str = "text"
    jobs: int = 1
    cache_dir: str | None = None

    def __post_init__(self):
        if self.n_max < 5:
            raise ConfigError(f"n_max must be at least 5, got {self.n_max}")
        if self.jobs < 1:
            raise ConfigError(f"jobs must be at least 1, got {self.jobs}")
        if self.output_format not in ("text", "json", "csv"):
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def echo(self) -> dict:
        return {
            "n_max": self.n_max,
            "fact_ceiling": self.fact_ceiling,
            "sieve_moduli": list(self.sieve_moduli),
            "point_files": list(self.point_files),
        }

    def load_points(self) -> dict[int, dict[int, PointSet]]:
        return merge_point_maps(*(load_points(p) for p in self.point_files))


@dataclass
class CandidateReport:
    n: int
    M: FactoredInteger
    sources: list[str]
    lloyd_passes: bool
    lloyd_roots: list[str]
    lloyd_discriminant: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "M": str(self.M),
            "M_exponents": {str(p): e for p, e in self.M.factors},
            "sources": self.sources,
            "lloyd": {
                "passes": self.lloyd_passes,
                "roots": self.lloyd_roots,
                "discriminant": self.lloyd_discriminant,
            },
        }


@dataclass
class ClassificationReport:
    q: int
    scope_note: str | None = None
    notes: list[str] = field(default_factory=list)
    n_max: int | None = None
    y_bound: int | None = None
    equation: dict | None = None
    solutions: list[dict] = field(default_factory=list)
    candidates: list[CandidateReport] = field(default_factory=list)
    verdict: Verdict | None = None
    curves: list[dict] = field(default_factory=list)
    external_points: dict[int, dict] = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def skipped(self) -> bool:
        return self.scope_note is not None

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "q": self.q,
            "scope_note": self.scope_note,
            "notes": self.notes,
            "verdict": self.verdict.value if self.verdict else None,
            "n_max": self.n_max,
            "y_bound": self.y_bound,
            "equation": self.equation,
            "solutions": self.solutions,
            "candidates": [c.to_dict() for c in self.candidates],
            "curves": self.curves,
            "external_points": {str(d): v for d, v in self.external_points.items()},
            "config": self.config,
        }
        if timing:
            out["timing"] = {"seconds": round(self.seconds, 6)}
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationReport":
        cands = [
            CandidateReport(
                c["n"],
                FactoredInteger(tuple((int(p), e) for p, e in c["M_exponents"].items())),
                c["sources"],
                c["lloyd"]["passes"],
                c["lloyd"]["roots"],
                c["lloyd"]["discriminant"],
            )
            for c in data["candidates"]
        ]
        return cls(
            q=data["q"],
            scope_note=data["scope_note"],
            notes=data["notes"],
            n_max=data["n_max"],
            y_bound=data["y_bound"],
            equation=data["equation"],
            solutions=data["solutions"],
            candidates=cands,
            verdict=Verdict(data["verdict"]) if data["verdict"] else None,
            curves=data["curves"],
            external_points={int(d): v for d, v in data["external_points"].items()},
            config=data["config"],
            seconds=data.get("timing", {}).get("seconds", 0.0),
        )


def y_bound_for(alphabet: Alphabet, n_max: int) -> int:
    """Largest equation-side y that can come from a word length <= n_max."""
    eq = to_rn_equation(alphabet)
    return sphere_size(alphabet, n_max) * math.prod(p**e for p, e in eq.absorbed)


def _config_key(q: int, cfg: RunConfig, points: dict[int, PointSet]) -> str:
    from . import __version__

    payload = {
        "version": __version__,
        "q": q,
        "n_max": cfg.n_max,
        "fact_ceiling": cfg.fact_ceiling,
        "sieve_moduli": list(cfg.sieve_moduli),
        "points": [
            [ps.d, [[p.X, p.Y] for p in ps.points], ps.complete, ps.provenance]
            for ps in sorted(points.values(), key=lambda ps: ps.d)
        ],
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:20]


def classify(q: int, cfg: RunConfig, points: dict[int, dict[int, PointSet]] | None = None):
    """Classify one alphabet size. ``points`` defaults to cfg.point_files."""
    if points is None:
        points = cfg.load_points()
    q_points = points.get(q, {})

    cache_file = None
    if cfg.cache_dir:
        cache_file = Path(cfg.cache_dir) / f"q{q}-{_config_key(q, cfg, q_points)}.json"
        if cache_file.exists():
            return ClassificationReport.from_dict(json.loads(cache_file.read_text()))

    report = _classify(q, cfg, q_points)
    if cache_file is not None:
        cache_file.parent.mkdir(parents=True, exist_ok=True)
        cache_file.write_text(json.dumps(report.to_dict(), indent=1))
    return report


def _classify(q: int, cfg: RunConfig, q_points: dict[int, PointSet]) -> ClassificationReport:
    start = time.perf_counter()
    report = ClassificationReport(q=q, config=cfg.echo())
    try:
        alphabet = Alphabet.of(q)
    except OutOfScopeAlphabet as exc:
        report.scope_note = exc.reason
        return report

    if q in UNRESOLVED_Q:
        report.notes.append(
            f"q={q} lies outside the known unconditional classification; "
            "this verdict is bounded unless complete point data is supplied"
        )

    eq = to_rn_equation(alphabet)
    report.n_max = cfg.n_max
    report.y_bound = y_bound_for(alphabet, cfg.n_max)
    report.equation = {
        "b": eq.b,
        "c": eq.c,
        "support": list(eq.support.primes),
        "halved": eq.halved,
        "absorbed": {str(p): e for p, e in eq.absorbed},
    }

    sols: list[RNSolution] = solve_bounded(eq, report.y_bound, cfg.sieve_moduli)
    lifted: list[RNSolution] = []
    for d, ps in sorted(q_points.items()):
        for pt in ps.points:
            sol = lift_integral_point(eq, d, pt)
            if sol is not None:
                lifted.append(sol)
        report.external_points[d] = {
            "points": len(ps.points),
            "complete": ps.complete,
            "provenance": ps.provenance,
        }

    by_key: dict[tuple[int, int], set[str]] = {}
    for sol in sols + lifted:
        by_key.setdefault(sol.key(), set()).add(sol.source.value)
    merged = {s.key(): s for s in sols + lifted}
    report.solutions = [
        {"x": s.x, "y": str(s.y), "sources": sorted(by_key[k])}
        for k, s in sorted(merged.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    ]

    bounded_ns = {c.n for c in solutions_to_candidates(alphabet, sols)}
    lifted_ns = {c.n for c in solutions_to_candidates(alphabet, lifted)}
    cands: list[CodeCandidate] = solutions_to_candidates(alphabet, sols + lifted)
    for cand in cands:
        v = check_two_integer_roots(q, cand.n)
        sources = [s for s, ns in (("bounded_search", bounded_ns), ("lifted_point", lifted_ns)) if cand.n in ns]
        report.candidates.append(
            CandidateReport(cand.n, cand.M, sources, v.passes, [str(r) for r in v.roots], v.discriminant)
        )

    report.curves = [
        {"d": cv.d, "k": cv.k, "a_S": cv.a_S, "a_S_below_500000": cv.small_conductor_bound}
        for cv in curve_inventory(eq, cfg.fact_ceiling)
    ]

    complete = all(q_points.get(d) is not None and q_points[d].complete for d in enumerate_d(eq))
    if any(c.lloyd_passes for c in report.candidates):
        report.verdict = Verdict.SURVIVING_CANDIDATE
        log.error("q=%d: candidate survives the Lloyd test", q)
    elif complete:
        report.verdict = Verdict.UNCONDITIONAL_NONEXISTENCE
    elif report.candidates:
        report.verdict = Verdict.ALL_CANDIDATES_ELIMINATED_BY_LLOYD
    else:
        report.verdict = Verdict.NO_CANDIDATES_UP_TO_BOUND
    report.seconds = time.perf_counter() - start
    return report


def _coverage(qs: list[int]) -> dict[str, list[int]]:
    def primes_within(q, allowed):
        return all(p in allowed for p in Alphabet.of(q).support)

    return {
        "q<=200 except 94,166": [q for q in qs if q <= 200 and q not in UNRESOLVED_Q],
        "q<=600, prime divisors in {2,3,5,7,11}": [
            q for q in qs if q <= 600 and primes_within(q, {2, 3, 5, 7, 11})
        ],
        "q<=600, prime divisors <= 13": [
            q for q in qs if q <= 600 and primes_within(q, {2, 3, 5, 7, 11, 13})
        ],
    }


@dataclass
class RangeResult:
    reports: list[ClassificationReport]
    aggregate: dict

    @property
    def survivors(self) -> list[ClassificationReport]:
        return [r for r in self.reports if r.verdict is Verdict.SURVIVING_CANDIDATE]


def _classify_star(args):
    return classify(*args)


def run_range(q_from: int, q_to: int, cfg: RunConfig) -> RangeResult:
    """Classify every q in [q_from, q_to]; stops at the first surviving candidate."""
    if q_from < 2 or q_from > q_to:
        raise ConfigError(f"empty or invalid range [{q_from}, {q_to}]")
    points = cfg.load_points()
    qs = list(range(q_from, q_to + 1))
    jobs = [(q, cfg, {q: points.get(q, {})}) for q in qs]

    reports: list[ClassificationReport] = []
    aborted_at = None
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            for rep in pool.map(_classify_star, jobs):
                reports.append(rep)
                if rep.verdict is Verdict.SURVIVING_CANDIDATE:
                    aborted_at = rep.q
                    pool.shutdown(wait=False, cancel_futures=True)
                    break
    else:
        for job in jobs:
            rep = classify(*job)
            reports.append(rep)
            if rep.verdict is Verdict.SURVIVING_CANDIDATE:
                aborted_at = rep.q
                break

    classified = [r for r in reports if not r.skipped]
    counts = {v.value: 0 for v in Verdict}
    for r in classified:
        counts[r.verdict.value] += 1
    aggregate = {
        "q_from": q_from,
        "q_to": q_to,
        "classified": len(classified),
        "skipped": {r.q: r.scope_note for r in reports if r.skipped},
        "verdict_counts": counts,
        "q_with_candidates": [r.q for r in classified if r.candidates],
        "coverage": _coverage([r.q for r in classified]),
        "aborted_at": aborted_at,
    }
    if aborted_at is not None:
        log.error("range aborted: SURVIVING_CANDIDATE at q=%d", aborted_at)
    return RangeResult(reports, aggregate)


@dataclass
class Table2Check:
    passed: bool
    rows: list[dict]


def reproduce_table2(cfg: RunConfig) -> Table2Check:
    rows = []
    for q, n, exps in TABLE2:
        rep = classify(q, cfg, points={})
        expected = (n, FactoredInteger.from_dict(exps))
        found = [(c.n, c.M) for c in rep.candidates]
        ok = found == [expected] and not any(c.lloyd_passes for c in rep.candidates)
        diagnostic = ""
        if not ok:
            if cfg.n_max < n:
                diagnostic = f"bound too low: n_max={cfg.n_max} < n={n}"
            elif found != [expected]:
                diagnostic = f"candidate mismatch: found {[(m, str(M)) for m, M in found]}"
            else:
                diagnostic = "Lloyd test did not eliminate the candidate"
        rows.append(
            {
                "q": q,
                "expected": {"n": n, "M": str(expected[1])},
                "found": [{"n": m, "M": str(M)} for m, M in found],
                "lloyd_eliminated": not any(c.lloyd_passes for c in rep.candidates),
                "ok": ok,
                "diagnostic": diagnostic,
            }
        )
    return Table2Check(all(r["ok"] for r in rows), rows)


def export_curves(qs, cfg: RunConfig, path) -> int:
    from .curvefile import write_curves

    in_scope = []
    for q in qs:
        try:
            Alphabet.of(q)
        except OutOfScopeAlphabet as exc:
            log.warning("skipping q=%d: %s", q, exc.reason)
            continue
        in_scope.append(q)
    return write_curves(in_scope, path, cfg.fact_ceiling)


def import_points(path, cfg: RunConfig) -> dict:
    """Load and verify a point file, lift every point, and summarize."""
    points = load_points(path)
    summary = {"file": str(path), "q": {}}
    for q, per_d in sorted(points.items()):
        alphabet = Alphabet.of(q)
        eq = to_rn_equation(alphabet)
        lifted = []
        for d, ps in per_d.items():
            lifted += [s for s in (lift_integral_point(eq, d, pt) for pt in ps.points) if s]
        cands = solutions_to_candidates(alphabet, lifted)
        ds = enumerate_d(eq)
        summary["q"][q] = {
            "curves": {
                d: {"points": len(ps.points), "complete": ps.complete, "provenance": ps.provenance}
                for d, ps in sorted(per_d.items())
            },
            "all_curves_complete": all(d in per_d and per_d[d].complete for d in ds),
            "missing_curves": [d for d in ds if d not in per_d],
            "lifted_solutions": [{"x": s.x, "y": str(s.y)} for s in lifted],
            "lifted_candidates": [{"n": c.n, "M": str(c.M)} for c in cands],
        }
    return summary
