"""``revtorus`` command line.

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 a
failed check or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from .algebra import IntMatrix2
from .exceptions import RevTorusError
from .involutions import classify_involution, construct_reversible_anosov, fixed_line
from .pell import PellProblem, solve_pell
from .reversors import find_reversors, r_centralizer_orbit

SEED_ENV = "REVTORUS_SEED"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class Output:
    """What a subcommand produced, renderable as json, csv or table."""

    def __init__(self, data, header=None, rows=None, text=None, ok=True):
        self.data = data
        self.header = header
        self.rows = rows
        self.text = text
        self.ok = ok

    def render(self, fmt: str, config: dict) -> str:
        if fmt == "json":
            payload = {"config": config, "result": self.data}
            return json.dumps(payload, indent=2, sort_keys=True) + "\n"
        header, rows = self.header, self.rows
        if rows is None:
            header, rows = ["key", "value"], [[k, _scalar(v)] for k, v in sorted(_flatten(self.data).items())]
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
            return buf.getvalue()
        if self.text is not None:
            return self.text
        from .tables import render

        return render(header, [[str(c) for c in r] for r in rows])


def _flatten(obj, prefix=""):
    out = {}
    if isinstance(obj, dict):
        for k, v in obj.items():
            out.update(_flatten(v, f"{prefix}{k}."))
    elif isinstance(obj, list) and obj and any(isinstance(v, (dict, list)) for v in obj):
        for i, v in enumerate(obj):
            out.update(_flatten(v, f"{prefix}{i}."))
    else:
        out[prefix[:-1]] = obj
    return out


def _scalar(v) -> str:
    if isinstance(v, list):
        return " ".join(_scalar(x) for x in v)
    return json.dumps(v) if isinstance(v, bool) or v is None else str(v)


# argument types; ValueError/ArgumentTypeError become usage errors


def matrix_arg(text: str) -> IntMatrix2:
    try:
        return IntMatrix2.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"matrix must be four integers a,b,c,d: {exc}")


def point_arg(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("point must be x,y")
    try:
        return tuple(float(Fraction(p.strip())) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def map_arg(text: str):
    from .dynamics import StandardMap, ToralAutomorphism

    kind, _, rest = text.partition(":")
    try:
        if kind == "toral":
            return ToralAutomorphism(IntMatrix2.parse(rest))
        if kind == "standard":
            return StandardMap(float(rest))
    except (ValueError, RevTorusError) as exc:
        raise argparse.ArgumentTypeError(str(exc))
    raise argparse.ArgumentTypeError("map must be toral:a,b,c,d or standard:sigma")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {SEED_ENV} must be an integer, got {raw!r}")


# subcommands


def cmd_classify(args) -> Output:
    cls = classify_involution(args.matrix)
    data = {"matrix": args.matrix.to_json(), **cls.to_json()}
    return Output(data, text=f"{cls}\n")


def cmd_fixed_line(args) -> Output:
    from .dynamics import LinearInvolution, fix_set

    line = fixed_line(args.matrix)
    curves = fix_set(LinearInvolution(args.matrix))
    data = {"matrix": args.matrix.to_json(), **line.to_json(), "torus": curves.to_json()}
    rows = [[eq] for eq in curves.equations()]
    return Output(data, ["fixed curve (mod 1)"], rows)


def cmd_construct(args) -> Output:
    m = construct_reversible_anosov(args.matrix)
    data = {"involution": args.matrix.to_json(), "anosov": m.to_json(), "trace": str(m.trace)}
    return Output(data, ["involution", "anosov"], [[str(args.matrix), str(m)]])


def cmd_find_reversors(args) -> Output:
    rep = find_reversors(args.matrix, alpha_beta_bound=args.bound, pell_class_limit=args.limit)
    rows = [[t.branch, f"{t.sign:+d}", str(t.matrix), "closed-form"] for t in rep.triangular_solutions]
    rows += [["Generic", "", str(g.matrix), "+".join(sorted(g.methods))] for g in rep.generic_solutions]
    return Output(rep.to_json(), ["branch", "sign", "involution", "found_by"], rows)


def cmd_pell(args) -> Output:
    sols = solve_pell(PellProblem(args.D, args.N), limit=args.limit)
    data = sols.to_json()
    data["equation"] = sols.problem.equation()
    if args.within is not None:
        box = sorted(sols.within(args.within))
        data["within"] = {"bound": args.within, "solutions": [s.to_json() for s in box]}
        rows = [[str(s.x), str(s.y)] for s in box]
    else:
        rows = [[str(s.x), str(s.y)] for s in sols.solutions]
    return Output(data, ["x", "y"], rows)


def cmd_centralizer(args) -> Output:
    ns = range(args.n_from, args.n_to + 1)
    orbit = r_centralizer_orbit(args.involution, args.matrix, ns)
    data = {
        "involution": args.involution.to_json(),
        "matrix": args.matrix.to_json(),
        "orbit": [{"n": n, "involution": r.to_json()} for n, r in zip(ns, orbit)],
        "distinct": len(set(orbit)),
    }
    return Output(data, ["n", "involution"], [[str(n), str(r)] for n, r in zip(ns, orbit)])


def _grid(g: int) -> np.ndarray:
    c = (np.arange(g) + 0.5) / g
    xs, ys = np.meshgrid(c, c, indexing="ij")
    return np.column_stack([xs.ravel(), ys.ravel()])


def cmd_lyapunov(args) -> Output:
    from .dynamics import LyapunovEstimator

    est = LyapunovEstimator(args.map, n_iter=args.n, transient=args.transient, random_state=args.seed)
    if args.grid is None:
        rec = est.fit([args.point]).estimate_one(args.point)
        data = {"map": args.map.to_json(), **rec.to_json()}
        return Output(data, ["x", "y", "lambda_plus"], [[*rec.initial_point, rec.lambda_plus]])
    pts = _grid(args.grid)
    est.fit(pts)
    vecs = est._vectors(len(pts))
    chunks = np.array_split(np.arange(len(pts)), max(1, args.jobs))
    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        parts = list(pool.map(lambda idx: est._run(pts[idx], vecs[idx]), chunks))
    lam = np.concatenate(parts)
    data = {
        "map": args.map.to_json(),
        "n": args.n,
        "transient": args.transient,
        "rng_seed": args.seed,
        "grid": args.grid,
        "points": [{"x": float(p[0]), "y": float(p[1]), "lambda_plus": float(v)} for p, v in zip(pts, lam)],
    }
    rows = [[repr(float(p[0])), repr(float(p[1])), repr(float(v))] for p, v in zip(pts, lam)]
    return Output(data, ["x", "y", "lambda_plus"], rows)


def cmd_verify(args) -> Output:
    from .verify import run_suite

    results = run_suite(args.suite, seed=args.seed)
    ok = all(r.passed for r in results)
    rows = [[r.suite, r.name, "PASS" if r.passed else "FAIL", r.detail] for r in results]
    data = {"suite": args.suite, "passed": ok, "properties": [r.to_json() for r in results]}
    return Output(data, ["suite", "property", "result", "detail"], rows, ok=ok)


def cmd_tables(args) -> Output:
    from .tables import (
        PRESERVING_HEADER,
        REVERSING_HEADER,
        orientation_reversing_table,
        render_all,
        reversor_table,
    )

    t1, t2 = reversor_table(), orientation_reversing_table()
    data = {
        "orientation_preserving": {"header": list(PRESERVING_HEADER), "rows": t1},
        "orientation_reversing": {"header": list(REVERSING_HEADER), "rows": t2},
    }
    rows = [["preserving", *r] for r in t1] + [["reversing", *r] for r in t2]
    header = ["table", "c1", "c2", "c3", "c4", "c5", "c6"]
    return Output(data, header, rows, text=render_all())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--seed", type=int, default=None, help=f"RNG seed (default: ${SEED_ENV} or 0)")

    parser = argparse.ArgumentParser(prog="revtorus", description="Reversible dynamics on the 2-torus.")
    parser.add_argument("--version", action="version", version=f"revtorus {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "classify a linear involution")
    p.add_argument("-m", "--matrix", type=matrix_arg, required=True)
    p = add("fixed-line", cmd_fixed_line, "fixed line and fixed curves of an involution")
    p.add_argument("-m", "--matrix", type=matrix_arg, required=True)
    p = add("construct-anosov", cmd_construct, "a hyperbolic map reversed by the involution")
    p.add_argument("-m", "--matrix", type=matrix_arg, required=True)
    p = add("find-reversors", cmd_find_reversors, "all linear involutions reversing a hyperbolic map")
    p.add_argument("-m", "--matrix", type=matrix_arg, required=True)
    p.add_argument("--bound", type=int, default=50, help="scan bound for |alpha|, |beta|")
    p.add_argument("--limit", type=int, default=20, help="members materialized per Pell class")
    p = add("pell", cmd_pell, "solve x^2 - D y^2 = N")
    p.add_argument("-D", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--limit", type=int, default=10)
    p.add_argument("--within", type=int, default=None, help="list every solution with |x|,|y| <= bound")
    p = add("centralizer", cmd_centralizer, "the involutions A L^n")
    p.add_argument("-A", "--involution", type=matrix_arg, required=True)
    p.add_argument("-m", "--matrix", type=matrix_arg, required=True)
    p.add_argument("--from", dest="n_from", type=int, default=-5)
    p.add_argument("--to", dest="n_to", type=int, default=5)
    p = add("lyapunov", cmd_lyapunov, "finite-time upper Lyapunov exponent")
    p.add_argument("--map", type=map_arg, required=True, help="toral:a,b,c,d or standard:sigma")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("-p", "--point", type=point_arg)
    where.add_argument("--grid", type=int, help="sweep a GxG grid of cell centres")
    p.add_argument("-n", type=int, default=100_000)
    p.add_argument("--transient", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="threads for grid sweeps")
    p = add("verify", cmd_verify, "run a named invariant suite")
    from .verify import suite_names

    p.add_argument("suite", choices=suite_names())
    add("tables", cmd_tables, "rebuild both reversor tables")
    return parser


def _config(args) -> dict:
    skip = {"func", "format"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        if isinstance(v, IntMatrix2):
            v = v.to_json()
        elif hasattr(v, "to_json"):
            v = v.to_json()
        elif isinstance(v, tuple):
            v = list(v)
        out[k] = v
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.seed is None:
        args.seed = _default_seed()
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=stderr)
        return EXIT_USAGE
    try:
        out = args.func(args)
    except RevTorusError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_FAIL
    stdout.write(out.render(args.format, _config(args)))
    return EXIT_OK if out.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())
