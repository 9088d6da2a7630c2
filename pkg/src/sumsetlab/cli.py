"""Command-line entry point.

A thin client of the service layer: every subcommand builds the same
pydantic request the HTTP endpoint accepts and calls the handler
in-process.  Exit codes separate mathematical violations (1) from usage
errors (2) so CI can tell a regression from a misconfiguration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .service import (
    ConstantRequest,
    LemmaRequest,
    SearchRequest,
    VerifyRequest,
    handle_constant,
    handle_lemma,
    handle_search,
    handle_verify,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _flatten_report(report: dict) -> list[tuple[str, str]]:
    rows = []
    for key in sorted(report):
        value = report[key]
        if isinstance(value, dict):
            for sub in sorted(value):
                rows.append((f"{key}.{sub}", json.dumps(value[sub])))
        else:
            rows.append((key, json.dumps(value)))
    return rows


def _emit(report: dict, fmt: str, out: str | None, summary: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])
        writer.writerows(_flatten_report(report))
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(summary + "\n")
    if out:
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")


def _add_common(sub):
    sub.add_argument("--out", help="write the full JSON report to this path")
    sub.add_argument(
        "--format", choices=["json", "csv", "text"], default="text",
        help="stdout format (default: human-readable text)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="verification campaigns for sumset inequalities on Z^d",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    c = subs.add_parser("constants", help="compute a sharp constant")
    c.add_argument(
        "--which", required=True,
        choices=["cube-upper", "tau", "q-hypercube", "c-of-p", "conjugate"],
    )
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--p", type=float)
    _add_common(c)

    l = subs.add_parser("lemmas", help="grid-check a one-variable lemma")
    l.add_argument("--which", required=True)
    l.add_argument("--n", type=int)
    l.add_argument("--p", type=float)
    l.add_argument("--grid", type=int, dest="points",
                   help="grid points per axis")
    l.add_argument("--draws", type=int)
    l.add_argument("--seed", type=int)
    l.add_argument("--step", type=float)
    _add_common(l)

    v = subs.add_parser("verify", help="run a verification campaign")
    v.add_argument(
        "--statement", required=True,
        choices=["two-sets", "n-fold", "three-sets", "cube-containing",
                 "k-sum-cube", "energy", "dilate"],
    )
    v.add_argument("--n", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--p", type=float)
    v.add_argument("--mode", choices=["exhaustive", "random"])
    v.add_argument("--count", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--box", type=int)
    _add_common(v)

    s = subs.add_parser("search", help="local search for extremizers")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--p", type=float)
    s.add_argument("--budget", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    _add_common(s)

    srv = subs.add_parser("serve", help="run the HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8000)
    return parser


def _run_config(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in vars(args).items() if v is not None}
    cfg["threads"] = int(os.environ.get("SUMSETLAB_THREADS", "1"))
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "serve":
            import uvicorn

            from .service import app

            uvicorn.run(app, host=args.host, port=args.port)
            return EXIT_OK

        if args.command == "constants":
            resp = handle_constant(
                ConstantRequest(which=args.which, n=args.n, m=args.m, p=args.p)
            )
            report = resp.model_dump()
            report["config"] = _run_config(args)
            _emit(
                report, args.format, args.out,
                f"{resp.definition} = {resp.value!r}  (residual {resp.residual:.3e})",
            )
            return EXIT_OK

        if args.command == "lemmas":
            resp = handle_lemma(
                LemmaRequest(
                    which=args.which, n=args.n, p=args.p, points=args.points,
                    draws=args.draws, seed=args.seed, step=args.step,
                )
            )
            report = resp.model_dump()
            report["config"] = _run_config(args)
            status = "PASS" if resp.passed else "FAIL"
            _emit(
                report, args.format, args.out,
                f"[{status}] {resp.lemma}: min margin {resp.min_margin:.3e} "
                f"at {resp.argmin}",
            )
            return EXIT_OK if resp.passed else EXIT_VIOLATION

        if args.command == "verify":
            resp = handle_verify(
                VerifyRequest(
                    statement=args.statement, n=args.n, m=args.m, d=args.d,
                    k=args.k, p=args.p, mode=args.mode, count=args.count,
                    seed=args.seed, box=args.box,
                )
            )
            report = resp.model_dump()
            report["config"] = _run_config(args)
            status = "PASS" if resp.violations == 0 else "FAIL"
            _emit(
                report, args.format, args.out,
                f"[{status}] {resp.statement}: {resp.instances} instances, "
                f"{resp.violations} violations, "
                f"min log-margin {resp.min_log_margin:.3e}",
            )
            return EXIT_OK if resp.violations == 0 else EXIT_VIOLATION

        if args.command == "search":
            resp = handle_search(
                SearchRequest(
                    n=args.n, m=args.m, d=args.d, p=args.p,
                    budget=args.budget, seed=args.seed,
                )
            )
            report = resp.model_dump()
            report["config"] = _run_config(args)
            negative = resp.min_log_margin < -1e-9
            status = "FOUND NEGATIVE MARGIN" if negative else "no violation found"
            _emit(
                report, args.format, args.out,
                f"search: best margin {resp.min_log_margin:.3e} ({status}); "
                f"witness {resp.argmin}",
            )
            return EXIT_VIOLATION if negative else EXIT_OK

        parser.error(f"unknown command {args.command!r}")
    except (ValueError, TypeError, OverflowError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
