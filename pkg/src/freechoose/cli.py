"""Command-line front end.

Exit codes: 0 colored / valid / feasible, 1 usage or input error,
2 a negative mathematical result (infeasible, invalid coloring, ...).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from typing import Optional

from . import oracle
from .composite import solve_free_composite
from .core import (
    Anchor,
    Cycle,
    Instance,
    InstanceError,
    Outcome,
    Path,
    SolveReport,
    StructureError,
    fchr_cycle,
    fmt_ratio,
    is_guaranteed_cycle,
    validate_coloring,
)
from .cyclesolver import CycleInstance, counterexample_list, solve_free_cycle
from .documents import (
    DocumentError,
    dumps,
    instance_doc,
    parse_coloring,
    parse_instance,
    report_doc,
)
from .generators import random_anchor, random_lists
from .pathcolor import PathInstance, solve_path

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE = 0, 1, 2


class UsageError(Exception):
    pass


def solve_instance(inst: Instance, budget: Optional[int] = oracle.DEFAULT_BUDGET) -> SolveReport:
    """Pick the constructive solver matching the instance, else the exact oracle."""
    a = inst.list_size
    shape = inst.shape
    if inst.anchor is not None and a is not None and inst.b >= 1:
        if isinstance(shape, Cycle):
            ci = CycleInstance(inst.lists, inst.b, inst.anchor.vertex, inst.anchor.colors)
            return solve_free_cycle(ci)
        return solve_free_composite(inst, oracle_budget=budget)
    if isinstance(shape, Path) and inst.anchor is None:
        try:
            return solve_path(PathInstance(inst.lists, inst.b))
        except InstanceError:
            pass
    res = oracle.feasible(inst, budget)
    return SolveReport(
        Outcome.COLORED if res.feasible else Outcome.INFEASIBLE,
        coloring=res.witness,
        total_colors=inst.total_colors,
        steps=res.nodes_explored,
        solver="oracle",
    )


# --------------------------------------------------------------------------
# helpers


def _read_json(path: Optional[str]):
    try:
        if path in (None, "-"):
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path or '<stdin>'}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def _parse_range(text: str) -> range:
    for sep in ("..", ":"):
        if sep in text:
            lo, hi = text.split(sep, 1)
            return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def _print_report_text(doc, out):
    th = doc["threshold"]
    out.write(f"outcome: {doc['outcome']}\n")
    out.write(f"solver: {doc['solver']}  fallback_used: {str(doc['fallback_used']).lower()}\n")
    verdict = "met" if th["met"] else "not met"
    out.write(f"threshold: ratio {th['ratio']} vs required {th['required']} ({verdict})\n")
    out.write(f"colors: {doc['total_colors']}  repairs: {doc['repairs']}  steps: {doc['steps']}\n")
    if "elapsed_ms" in doc:
        out.write(f"elapsed_ms: {doc['elapsed_ms']}\n")
    if doc["coloring"] is not None:
        for v, cs in doc["coloring"].items():
            out.write(f"  v{v}: {' '.join(map(str, cs))}\n")


# --------------------------------------------------------------------------
# subcommands


def cmd_solve(args) -> int:
    inst = parse_instance(_read_json(args.input))
    t0 = time.perf_counter()
    report = solve_instance(inst, args.budget)
    elapsed = (time.perf_counter() - t0) * 1000 if args.timing else None
    doc = report_doc(report, inst, elapsed)
    if args.format == "structured":
        sys.stdout.write(dumps(doc))
    else:
        _print_report_text(doc, sys.stdout)
    return EXIT_OK if report.colored else EXIT_NEGATIVE


def cmd_verify(args) -> int:
    inst = parse_instance(_read_json(args.instance))
    coloring = parse_coloring(_read_json(args.coloring), inst.num_vertices)
    problems = validate_coloring(inst, coloring)
    if args.format == "structured":
        sys.stdout.write(dumps({"format": 1, "valid": not problems,
                                "violations": [str(p) for p in problems]}))
    else:
        sys.stdout.write("valid\n" if not problems else "".join(f"{p}\n" for p in problems))
    return EXIT_OK if not problems else EXIT_NEGATIVE


def cmd_oracle(args) -> int:
    inst = parse_instance(_read_json(args.input))
    if args.free_vertex is not None:
        v = args.free_vertex
        if not 0 <= v < inst.num_vertices:
            raise UsageError(f"--free-vertex {v} out of range")
        bare = Instance(inst.shape, inst.lists, inst.b)
        res = oracle.free_check_list(bare, v, args.budget)
        doc = {
            "format": 1,
            "vertex": v,
            "all_extendable": res.all_extendable,
            "failing_c0": None if res.failing is None else sorted(res.failing),
            "checked": res.checked,
            "nodes_explored": res.nodes_explored,
        }
        ok = res.all_extendable
    else:
        res = oracle.feasible(inst, args.budget)
        doc = {
            "format": 1,
            "feasible": res.feasible,
            "witness": None if res.witness is None
            else {str(v): sorted(c) for v, c in enumerate(res.witness)},
            "nodes_explored": res.nodes_explored,
        }
        ok = res.feasible
    if args.format == "structured":
        sys.stdout.write(dumps(doc))
    else:
        for k, val in doc.items():
            if k != "format":
                sys.stdout.write(f"{k}: {json.dumps(val)}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_counterexample(args) -> int:
    try:
        lists = counterexample_list(args.p, args.a, args.b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inst = Instance(Cycle(2 * args.p), lists, args.b, Anchor(0, frozenset(range(1, args.b + 1))))
    sys.stdout.write(dumps(instance_doc(inst)))
    return EXIT_OK


def cmd_ratio(args) -> int:
    if args.n < 3:
        raise UsageError(f"cycles need n >= 3, got {args.n}")
    sys.stdout.write(fmt_ratio(fchr_cycle(args.n)) + "\n")
    return EXIT_OK


def sweep_rows(n_range, a_range, b_range, trials, seed, universe=None, spot=5, budget=None):
    """Rows of the frontier sweep, in (n, a, b) order.

    Yields dicts; stops with ``{"truncated": True}`` once the total work
    counter passes ``budget``.
    """
    work = 0
    for n in n_range:
        if n < 3:
            continue
        for b in b_range:
            if b < 1:
                continue
            for a in (a_range if a_range is not None else range(b, 3 * b + 2)):
                if a < b:
                    continue
                rng = random.Random(f"{seed}:{n}:{a}:{b}")
                colored = agree = checked = 0
                for t in range(trials):
                    lists = random_lists(rng, n, a, universe)
                    anc = random_anchor(rng, lists, b)
                    rep = solve_free_cycle(CycleInstance(lists, b, anc.vertex, anc.colors))
                    work += rep.steps
                    colored += rep.colored
                    if t < spot:
                        res = oracle.feasible(Instance(Cycle(n), lists, b, anc), None)
                        work += res.nodes_explored
                        checked += 1
                        agree += res.feasible == rep.colored
                theory = is_guaranteed_cycle(n, a, b)
                counterexample = "-"
                if n % 2 == 0 and not theory:
                    p = n // 2
                    lists = counterexample_list(p, a, b)
                    res = oracle.feasible(
                        Instance(Cycle(n), lists, b, Anchor(0, frozenset(range(1, b + 1)))), None
                    )
                    work += res.nodes_explored
                    counterexample = "feasible" if res.feasible else "infeasible"
                yield {
                    "n": n, "a": a, "b": b,
                    "ratio": f"{a}/{b}",
                    "fchr": fmt_ratio(fchr_cycle(n)),
                    "theory": theory,
                    "colored": f"{colored}/{trials}",
                    "oracle_agree": f"{agree}/{checked}",
                    "counterexample": counterexample,
                }
                if budget is not None and work > budget:
                    yield {"truncated": True}
                    return


def frontier(rows) -> dict:
    """Per n: the exact threshold and the bracket the grid observed around it.

    ``colored_from`` is the smallest guaranteed ratio whose trials were all
    colored; ``witness_below`` the largest ratio with an infeasible
    counterexample list (even n only).
    """
    out: dict[int, dict] = {}
    for r in rows:
        if r.get("truncated"):
            continue
        x = Fraction(r["a"], r["b"])
        cell = out.setdefault(r["n"], {"fchr": r["fchr"], "colored_from": None, "witness_below": None})
        done, total = map(int, r["colored"].split("/"))
        if r["theory"] and done == total:
            if cell["colored_from"] is None or x < Fraction(cell["colored_from"]):
                cell["colored_from"] = fmt_ratio(x)
        if r["counterexample"] == "infeasible":
            if cell["witness_below"] is None or x > Fraction(cell["witness_below"]):
                cell["witness_below"] = fmt_ratio(x)
    return dict(sorted(out.items()))


def cmd_sweep(args) -> int:
    rows = list(
        sweep_rows(
            _parse_range(args.n),
            _parse_range(args.a) if args.a else None,
            _parse_range(args.b),
            args.trials,
            args.seed,
            args.universe,
            budget=args.budget,
        )
    )
    front = frontier(rows)
    if args.format == "structured":
        sys.stdout.write(dumps({"format": 1, "rows": rows,
                                "frontier": {str(k): v for k, v in front.items()}}))
        return EXIT_OK
    cols = ["n", "a", "b", "ratio", "fchr", "theory", "colored", "oracle_agree", "counterexample"]
    body = [r for r in rows if not r.get("truncated")]
    widths = {c: max([len(c)] + [len(str(r[c]).lower()) for r in body]) for c in cols}
    sys.stdout.write("  ".join(c.ljust(widths[c]) for c in cols).rstrip() + "\n")
    for r in body:
        sys.stdout.write("  ".join(str(r[c]).lower().ljust(widths[c]) for c in cols).rstrip() + "\n")
    if len(body) < len(rows):
        sys.stdout.write("# truncated: work budget exceeded\n")
    for n, cell in front.items():
        line = f"# frontier n={n}: fchr {cell['fchr']}, all colored from {cell['colored_from']}"
        if cell["witness_below"] is not None:
            line += f", counterexample at {cell['witness_below']}"
        sys.stdout.write(line + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text")
    common.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET,
                        help="node budget for exact search")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=20)
    common.add_argument("--universe", type=int, default=None,
                        help="colors drawn from 1..U (default 3a)")

    parser = argparse.ArgumentParser(prog="freechoose", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve an instance document")
    p.add_argument("input", nargs="?", help="instance file (default: stdin)")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="check a coloring against an instance")
    p.add_argument("instance")
    p.add_argument("coloring")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="exact feasibility / free check")
    p.add_argument("input", nargs="?")
    p.add_argument("--free-vertex", type=int, default=None,
                   help="try every b-subset of L(v) as the fixed set")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("counterexample", parents=[common], help="emit the even-cycle counterexample")
    p.add_argument("p", type=int)
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("ratio", parents=[common], help="free-choice ratio of the n-cycle")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("sweep", parents=[common], help="empirical frontier table for cycles")
    p.add_argument("--n", default="4..7", help="cycle lengths, e.g. 4..7")
    p.add_argument("--a", default=None, help="list sizes (default b..3b+1)")
    p.add_argument("--b", default="1..2")
    p.set_defaults(func=cmd_sweep, budget=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DocumentError, InstanceError, StructureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except oracle.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
