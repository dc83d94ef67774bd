"""Command line: ``dvdom solve | verify | generate | bench``.

Exit codes: 0 ok, 1 bad input, 2 algorithm inapplicable, 3 refusal
(over a cap, or nothing within the budget), 4 invalid solution, 5 internal
error (including a solver failing its own verification).
"""
from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from io import StringIO
from typing import Sequence

from .baseline import BRUTE_FORCE_LIMIT, greedy_ratio_bound
from .exceptions import InapplicableError, InputError, RefusalError, SelfCheckError
from .generators import FAMILIES, generate
from .graph import is_dvd_set
from .io import (
    SolveRecord,
    format_instance,
    format_labels,
    format_solution,
    read_instance,
    read_solution,
    read_td,
)
from .mw import DEFAULT_WIDTH_CAP
from .runner import ALGORITHMS, run_algorithm

EXIT_OK, EXIT_INPUT, EXIT_INAPPLICABLE, EXIT_REFUSED, EXIT_INVALID, EXIT_INTERNAL = range(6)

BENCH_COLUMNS = ("instance", "algorithm", "status", "size", "valid", "wall_ms", "width_used",
                 "ratio", "ratio_bound")


class _Parser(argparse.ArgumentParser):
    """Usage errors are input errors (exit 1), not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    try:
        x = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if x < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {x}")
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dvdom", description="Distance Vector Domination solvers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one instance")
    p.add_argument("--algorithm", "-a", required=True, choices=ALGORITHMS)
    p.add_argument("--instance", "-i", required=True)
    p.add_argument("--td", help="PACE .td file for the tree-decomposition solvers")
    p.add_argument("--budget", type=_nonneg, help="fail with exit 3 unless a set this small is found")
    p.add_argument("--json", action="store_true", help="print one JSON record")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width-cap", type=_nonneg, default=DEFAULT_WIDTH_CAP)
    p.add_argument("--size-cap", type=_nonneg, default=BRUTE_FORCE_LIMIT,
                   help="largest vertex count exhaustive search accepts")
    p.add_argument("--no-timing", action="store_true", help="report wall_ms as null")

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")

    p = sub.add_parser("generate", help="write a generated instance")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("params", nargs="*", help="positional values or key=value pairs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", help="instance file (default: standard output)")
    p.add_argument("--labels", help="gadget label sidecar for mq-vd (default: <output>.labels)")

    p = sub.add_parser("bench", help="run a suite and print CSV")
    p.add_argument("suite")
    p.add_argument("--jobs", type=_nonneg, default=1)
    p.add_argument("--output", "-o", help="also write the CSV here")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--width-cap", type=_nonneg, default=DEFAULT_WIDTH_CAP)
    p.add_argument("--size-cap", type=_nonneg, default=BRUTE_FORCE_LIMIT)
    p.add_argument("--no-timing", action="store_true", help="leave wall_ms empty")
    return parser


# ---------------------------------------------------------------------- solve

def cmd_solve(args, out) -> int:
    inst = read_instance(args.instance)
    td = read_td(args.td, inst.n) if args.td else None
    res = run_algorithm(inst, args.algorithm, td=td, width_cap=args.width_cap,
                        size_cap=args.size_cap, budget=args.budget)
    sol = res.solution
    if args.json:
        rec = SolveRecord(args.algorithm, sol.size, tuple(v + 1 for v in sol.sorted()), True,
                          None if args.no_timing else round(res.wall_ms, 3), sol.width)
        out.write(rec.to_json() + "\n")
    else:
        out.write(format_solution(sol.selected))
    return EXIT_OK


# --------------------------------------------------------------------- verify

def cmd_verify(args, out) -> int:
    inst = read_instance(args.instance)
    chosen = read_solution(args.solution, inst.n)
    report = is_dvd_set(inst, chosen)
    if report.valid:
        out.write("VALID\n")
        return EXIT_OK
    out.write("INVALID\n")
    for v, short in sorted(report.deficiency.items()):
        out.write(f"deficient {v + 1} short {short}\n")
    return EXIT_INVALID


# ------------------------------------------------------------------- generate

def _generate_params(family: str, tokens: Sequence[str]) -> dict:
    names = FAMILIES[family][0]
    params: dict = {}
    positional = 0
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            if positional >= len(names):
                raise InputError(f"too many positional values for {family} (takes {', '.join(names)})")
            key, value = names[positional], tok
            positional += 1
        if key in params:
            raise InputError(f"parameter {key} given twice")
        params[key] = value
    return params


def cmd_generate(args, out) -> int:
    gen = generate(args.family, _generate_params(args.family, args.params), seed=args.seed)
    text = format_instance(gen.instance, gen.comments)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    if gen.gadgets is not None:
        labels = args.labels or (args.output + ".labels" if args.output else None)
        if labels:
            with open(labels, "w", encoding="utf-8") as fh:
                fh.write(format_labels(gen.gadgets))
        # keep standard output a clean instance file when it carries one
        print(f"k={gen.gadgets.k}", file=out if args.output else sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------- bench

def read_suite(path) -> list[tuple[str, str, str | None]]:
    """Rows ``instance algorithm [td]``; paths are relative to the suite file."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read suite {path}: {exc.strerror}") from None
    base = os.path.dirname(os.path.abspath(path))
    rows = []
    for lineno, raw in enumerate(lines, start=1):
        tok = raw.split("#", 1)[0].split()
        if not tok:
            continue
        if len(tok) not in (2, 3):
            raise InputError(f"{path}:{lineno}: expected 'instance algorithm [td]'")
        if tok[1] not in ALGORITHMS:
            raise InputError(f"{path}:{lineno}: unknown algorithm {tok[1]!r}")
        inst_path = os.path.join(base, tok[0])
        td_path = os.path.join(base, tok[2]) if len(tok) == 3 else None
        rows.append((inst_path, tok[1], td_path))
    return rows


def _bench_one(job) -> dict:
    inst_path, algorithm, td_path, width_cap, size_cap = job
    inst = read_instance(inst_path)
    td = read_td(td_path, inst.n) if td_path else None
    row = {"n": inst.n, "size": "", "valid": "", "wall_ms": None, "width_used": ""}
    try:
        res = run_algorithm(inst, algorithm, td=td, width_cap=width_cap, size_cap=size_cap)
    except InapplicableError:
        row["status"] = "inapplicable"
    except RefusalError:
        row["status"] = "refused"
    except SelfCheckError:
        row.update(status="invalid", valid=False)
    except InputError:
        row["status"] = "input-error"
    else:
        sol = res.solution
        row.update(status="ok", size=sol.size, valid=True, wall_ms=res.wall_ms,
                   width_used="" if sol.width is None else sol.width)
    return row


def cmd_bench(args, out) -> int:
    rows = read_suite(args.suite)
    problems = []
    for inst_path, _, td_path in rows:
        for path in (inst_path, td_path):
            if path is None:
                continue
            try:
                if path == inst_path:
                    read_instance(path)
                else:
                    read_td(path)
            except InputError as exc:
                problems.append(f"{os.path.relpath(path)}: {exc}")
    if problems:
        for msg in dict.fromkeys(problems):
            print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT

    jobs = [(i, a, t, args.width_cap, args.size_cap) for i, a, t in rows]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))
    else:
        results = [_bench_one(j) for j in jobs]

    suite_dir = os.path.dirname(os.path.abspath(args.suite))
    optimum = {}
    for (inst_path, algorithm, _), res in zip(rows, results):
        if algorithm == "brute" and res["status"] == "ok":
            optimum.setdefault(inst_path, res["size"])
    table = []
    for (inst_path, algorithm, _), res in zip(rows, results):
        ratio = ""
        best = optimum.get(inst_path)
        if best is not None and res["status"] == "ok":
            ratio = 1.0 if res["size"] == best else (res["size"] / best if best else math.inf)
        table.append({
            "instance": os.path.relpath(inst_path, suite_dir), "algorithm": algorithm,
            "status": res["status"], "size": res["size"], "valid": res["valid"],
            "wall_ms": res["wall_ms"], "width_used": res["width_used"],
            "ratio": ratio, "ratio_bound": greedy_ratio_bound(res["n"]),
        })

    summary = []
    for algorithm in dict.fromkeys(r["algorithm"] for r in table):
        mine = [r for r in table if r["algorithm"] == algorithm]
        ok = [r for r in mine if r["status"] == "ok"]
        ratios = [r["ratio"] for r in ok if r["ratio"] != ""]
        times = [r["wall_ms"] for r in ok]
        widths = [r["width_used"] for r in ok if r["width_used"] != ""]
        summary.append({
            "instance": "summary", "algorithm": algorithm, "status": f"{len(ok)}/{len(mine)} ok",
            "size": sum(r["size"] for r in ok), "valid": all(r["valid"] is not False for r in mine),
            "wall_ms": sum(times) if times else None, "width_used": max(widths, default=""),
            "ratio": max(ratios, default=""), "ratio_bound": "",
        })

    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_COLUMNS)
    for r in table + summary:
        writer.writerow([_cell(r[c], c, args.no_timing) for c in BENCH_COLUMNS])
    text = buf.getvalue()
    out.write(text)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_INVALID if any(r["valid"] is False for r in table) else EXIT_OK


def _cell(value, column: str, no_timing: bool) -> str:
    if column == "wall_ms":
        return "" if value is None or no_timing else f"{value:.3f}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


# ----------------------------------------------------------------------- main

_COMMANDS = {"solve": cmd_solve, "verify": cmd_verify, "generate": cmd_generate, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except InapplicableError as exc:
        print(f"inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except RefusalError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except SelfCheckError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # anything else is a bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
