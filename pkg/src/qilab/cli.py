"""Command-line driver for the verification suites.

Exit status equals the number of bound violations, so 0 means every
check passed. Reports are canonical: keys sorted, floats printed with
17 significant digits, no timestamps, so identical flags produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from .suites import SuiteConfig, run_suite

REPORT_SCHEMA = 1


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    if isinstance(obj, dict):
        items = ", ".join(
            f"{canonical_json(str(k))}: {canonical_json(v)}"
            for k, v in sorted(obj.items())
        )
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(canonical_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return f"{obj:.17g}"
    if isinstance(obj, str):
        escaped = (
            obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        )
        return f'"{escaped}"'
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _parse_dims(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition("-")
    low, high = int(lo), int(hi or lo)
    if not 1 <= low <= high <= 8:
        raise argparse.ArgumentTypeError("dims must satisfy 1 <= lo <= hi <= 8")
    return low, high


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qilab",
        description="Run seeded verification suites over the qilab library.",
    )
    parser.add_argument(
        "--suite",
        default="all",
        choices=["metrics", "info", "encoding", "transition", "rac", "reduction", "all"],
    )
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument(
        "--trials", type=int, default=None, help="override the per-suite default"
    )
    parser.add_argument(
        "--dims", type=_parse_dims, default=(2, 8), metavar="LO-HI"
    )
    parser.add_argument("--m", type=int, default=5, help="max encoding width in bits")
    parser.add_argument("--n", type=int, default=2, help="index-problem size")
    parser.add_argument(
        "--tol", type=float, default=None, help="override every check tolerance"
    )
    parser.add_argument("--out", default=None, help="write the JSON report here")
    parser.add_argument("--format", choices=["json", "text"], default="text")
    return parser


def build_report(args) -> dict:
    cfg = SuiteConfig(
        seed=args.seed,
        trials=args.trials,
        dims=tuple(args.dims),
        m=args.m,
        n=args.n,
        tol=args.tol,
    )
    checks = run_suite(args.suite, cfg)
    return {
        "schema": REPORT_SCHEMA,
        "suite": args.suite,
        "config": {
            "seed": args.seed,
            "trials": args.trials,
            "dims": list(args.dims),
            "m": args.m,
            "n": args.n,
            "tol": args.tol,
        },
        "checks": [c.to_json() for c in checks],
    }


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = build_report(args)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = canonical_json(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    violations = sum(c["violations"] for c in report["checks"])
    if args.format == "json":
        sys.stdout.write(text)
    else:
        for c in report["checks"]:
            status = "PASS" if c["violations"] == 0 else "FAIL"
            print(
                f"{status} {c['name']:32s} trials={c['trials']:5d} "
                f"min_slack={c['min_slack']:+.3e} violations={c['violations']}"
            )
            extras = {k: v for k, v in c["details"].items() if k != "tolerance"}
            for key, value in sorted(extras.items()):
                shown = f"{value:.6g}" if isinstance(value, float) else value
                print(f"     {key} = {shown}")
        print(f"total violations: {violations}")
    return violations


if __name__ == "__main__":
    sys.exit(main())
