"""Command-line front end.

Exit codes: 0 yes / respecting, 1 no / not respecting, 2 error,
3 two solvers disagreed during ``bench``.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import generators
from .dispatch import SOLVERS, Options, solve
from .errors import ARHError
from .formats import dump_instance, parse_graph, read_instance
from .instance import excess, neighbour_counts

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_DISAGREE = 0, 1, 2, 3


class CliError(Exception):
    pass


def _vertex_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load(path):
    try:
        inst, warnings = read_instance(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    return inst


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def _options(args) -> Options:
    return Options(
        decomposition=_read_text(args.decomposition) if getattr(args, "decomposition", None) else None,
        modulator=tuple(args.modulator) if getattr(args, "modulator", None) else None,
        budget_cap=args.budget_cap,
    )


def cmd_solve(args) -> int:
    inst = _load(args.input)
    report = solve(inst, args.solver, _options(args))
    print(report.answer)
    if report.verdict:
        print("witness: " + " ".join(map(str, report.witness)))
    print(f"solver: {report.solver}")
    print(f"elapsed: {report.elapsed * 1000:.3f} ms")
    print("stats: " + json.dumps(report.stats, sort_keys=True, default=str))
    return EXIT_YES if report.verdict else EXIT_NO


def cmd_verify(args) -> int:
    inst = _load(args.input)
    housing = args.housing
    counts = neighbour_counts(inst, housing)
    exc = excess(inst, housing)
    print(f"{'inhabitant':>10} {'ub':>4} {'count':>5} {'excess':>6}")
    for h, c in counts.items():
        print(f"{h:>10} {inst.ub[h]:>4} {c:>5} {exc.per_inhabitant[h]:>6}")
    print(f"total excess: {exc.total}")
    if len(set(housing)) != inst.refugees:
        print(f"note: housing has {len(set(housing))} vertices, R = {inst.refugees}")
    budget = inst.t or 0
    ok = exc.total <= budget
    if inst.t is None:
        print("respecting" if ok else "not respecting")
    else:
        print(f"{'within' if ok else 'over'} budget t = {inst.t}")
    return EXIT_YES if ok else EXIT_NO


def _family_params(args) -> dict:
    params = {}
    for key in ("n", "a", "b", "p", "k", "R", "t", "zero_prob", "occupied", "density"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    for item in args.params or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise CliError(f"--params entries look like key=value, got {item!r}")
        params[key] = json.loads(value) if value.strip() else value
    return params


def cmd_generate(args) -> int:
    inst, meta = generators.generate_random(args.family, _family_params(args), args.seed)
    _write(args.out, dump_instance(inst))
    if meta:
        stream = sys.stderr if args.out in (None, "-") else sys.stdout
        print(json.dumps(meta, sort_keys=True), file=stream)
    return EXIT_YES


def cmd_reduce(args) -> int:
    H = parse_graph(_read_text(args.graph))
    if args.source == "is":
        inst = generators.reduce_independent_set(H, _need(args.k, "--k"))
    elif args.source == "is-relaxed":
        inst = generators.reduce_relaxed_hardness(H, _need(args.k, "--k"), _need(args.t, "--t"))
    else:
        inst = generators.reduce_equitable_3col(H)
    _write(args.out, dump_instance(inst))
    return EXIT_YES


def _need(value, flag):
    if value is None:
        raise CliError(f"{flag} is required for this reduction")
    return value


def _suite_files(path) -> list[str]:
    base = os.path.dirname(os.path.abspath(path))
    files = []
    for line in _read_text(path).splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            files.append(line if os.path.isabs(line) else os.path.join(base, line))
    return files


def _bench_cell(job):
    path, solver, cap = job
    inst, _ = read_instance(path)
    try:
        rep = solve(inst, solver, Options(budget_cap=cap))
    except ARHError as exc:
        return path, solver, None, 0.0, {"error": str(exc)}
    return path, solver, rep.verdict, rep.elapsed * 1000, rep.stats


def cmd_bench(args) -> int:
    files = _suite_files(args.suite)
    solvers = args.solvers
    for s in solvers:
        if s not in SOLVERS:
            raise CliError(f"unknown solver {s!r}")
    for f in files:
        # fail fast on unreadable or invalid files before spending solver time
        _load(f)
    jobs = [(f, s, args.budget_cap) for f in files for s in solvers]
    if args.jobs > 1 and jobs:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_bench_cell, jobs))
    else:
        results = map(_bench_cell, jobs)
    rows = []
    status = EXIT_YES
    verdicts: dict[str, set] = {}
    for path, solver, verdict, ms, stats in results:
        label = "ERROR" if verdict is None else ("YES" if verdict else "NO")
        rows.append([os.path.relpath(path), solver, label, f"{ms:.3f}", json.dumps(stats, sort_keys=True, default=str)])
        if verdict is not None:
            verdicts.setdefault(path, set()).add(verdict)
            if len(verdicts[path]) > 1:
                print(f"error: solvers disagree on {path}", file=sys.stderr)
                status = EXIT_DISAGREE
                break
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(out)
        writer.writerow(["instance", "solver", "verdict", "elapsed_ms", "stats"])
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arhub", description="Refugee housing with upper-bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("--input", required=True)
    p.add_argument("--solver", default="auto", choices=SOLVERS)
    p.add_argument("--decomposition", help="PACE .td file for the tree-width solvers")
    p.add_argument("--modulator", type=_vertex_list, help="comma-separated vertex ids")
    p.add_argument("--budget-cap", type=int, help="enumeration / table-cell cap")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a housing")
    p.add_argument("--input", required=True)
    p.add_argument("--housing", required=True, type=_vertex_list)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="random instance of a structured family")
    p.add_argument("--family", required=True, choices=generators.FAMILIES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    for flag in ("--n", "--a", "--b", "--p", "--k", "--R", "--t"):
        p.add_argument(flag, type=int)
    for flag in ("--zero-prob", "--occupied", "--density"):
        p.add_argument(flag, type=float)
    p.add_argument("--params", nargs="*", metavar="KEY=VALUE")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="build an instance from a hardness reduction")
    p.add_argument("--from", dest="source", required=True, choices=("is", "eq3col", "is-relaxed"))
    p.add_argument("--graph", required=True, help="JSON graph document")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", help="run solvers over a suite and cross-check verdicts")
    p.add_argument("--suite", required=True, help="text file listing instance files")
    p.add_argument("--solvers", required=True, type=lambda s: [x for x in s.split(",") if x])
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget-cap", type=int)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ARHError, CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
