"""Command line entry point: ``perfcodes <verb> ...``.

Exit codes: 0 every verdict is non-existence, 1 a SURVIVING_CANDIDATE was
found, 2 configuration or input error, 3 table2-check mismatch.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .curvefile import PointFileError
from .pipeline import (
    ConfigError,
    RunConfig,
    Verdict,
    classify,
    export_curves,
    import_points,
    reproduce_table2,
    run_range,
)
from .report import render_range, render_report, render_table2

EXIT_OK, EXIT_SURVIVOR, EXIT_CONFIG, EXIT_TABLE2 = 0, 1, 2, 3


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--fact-ceiling", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS, help="reuse reports keyed by q and config")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="perfcodes",
        description="Bounded and point-assisted search for perfect 2-error-correcting q-ary codes.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify one alphabet size")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n-max", type=int, default=10**6)
    p.add_argument("--points", action="append", default=[], help="integral point file (JSON lines)")
    p.add_argument("--plot-dir", help="write a per-curve a_S figure here")

    p = sub.add_parser("range", parents=[common], help="classify every q in an interval")
    p.add_argument("--from", dest="q_from", type=int, required=True)
    p.add_argument("--to", dest="q_to", type=int, required=True)
    p.add_argument("--n-max", type=int, default=10**6)
    p.add_argument("--points", action="append", default=[])
    p.add_argument("--plot-dir", help="write range_summary.png here")

    p = sub.add_parser("table2-check", parents=[common], help="check the known q<=200 solutions")
    p.add_argument("--n-max", type=int, default=10**4)

    p = sub.add_parser("export-curves", parents=[common], help="write the Mordell curve inventory")
    p.add_argument("--q", type=_int_list, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("import-points", parents=[common], help="verify and lift a point file")
    p.add_argument("--file", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = vars(args)
    logging.basicConfig(
        level=logging.INFO if opts.get("verbose") else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    fmt = opts.get("format", "text")
    try:
        cfg = RunConfig(
            n_max=opts.get("n_max", 10**6),
            fact_ceiling=opts.get("fact_ceiling", 10**6),
            point_files=tuple(opts.get("points", ())),
            output_format=fmt,
            jobs=opts.get("jobs", 1),
            cache_dir=opts.get("cache_dir"),
        )
        return _dispatch(args, cfg, fmt)
    except (ConfigError, PointFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _dispatch(args, cfg: RunConfig, fmt: str) -> int:
    if args.verb == "classify":
        if args.q < 2:
            raise ConfigError("q must be at least 2")
        rep = classify(args.q, cfg)
        print(render_report(rep, fmt))
        if args.plot_dir and not rep.skipped:
            from .plotting import plot_curves

            plot_curves(rep, args.plot_dir)
        if rep.verdict is Verdict.SURVIVING_CANDIDATE:
            print(f"!!! q={rep.q}: SURVIVING_CANDIDATE", file=sys.stderr)
            return EXIT_SURVIVOR
        return EXIT_OK

    if args.verb == "range":
        result = run_range(args.q_from, args.q_to, cfg)
        print(render_range(result, fmt))
        if args.plot_dir:
            from .plotting import plot_range

            plot_range(result, args.plot_dir)
        if result.survivors:
            qs = [r.q for r in result.survivors]
            print(f"!!! SURVIVING_CANDIDATE for q={qs}", file=sys.stderr)
            return EXIT_SURVIVOR
        return EXIT_OK

    if args.verb == "table2-check":
        check = reproduce_table2(cfg)
        print(render_table2(check, fmt))
        if not all(r["lloyd_eliminated"] for r in check.rows):
            return EXIT_SURVIVOR
        return EXIT_OK if check.passed else EXIT_TABLE2

    if args.verb == "export-curves":
        count = export_curves(args.q, cfg, args.out)
        print(f"wrote {count} curve record(s) to {args.out}")
        return EXIT_OK

    if args.verb == "import-points":
        summary = import_points(args.file, cfg)
        if fmt == "json":
            print(json.dumps(summary, indent=2))
        else:
            for q, info in summary["q"].items():
                pts = sum(c["points"] for c in info["curves"].values())
                cands = ", ".join(f"n={c['n']} M={c['M']}" for c in info["lifted_candidates"]) or "none"
                print(
                    f"q={q}: {pts} point(s) on {len(info['curves'])} curve(s), "
                    f"all complete={info['all_curves_complete']}, lifted candidates: {cands}"
                )
        return EXIT_OK
    raise AssertionError(args.verb)


if __name__ == "__main__":
    sys.exit(main())
