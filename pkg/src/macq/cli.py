"""Command-line front end.

Examples::

    macq macdonald -l 2,1 --basis s
    macq cumulant -l "2,1;1,1" --route both
    macq hook-kostka -l "1;1;1" -s 2
    macq inversion-poly -g k3.json --route all
    macq verify --suite main --max-size 4

Exit status: 0 on success, 1 for invalid input, 2 when two routes disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from macq.algebra import MPoly
from macq.errors import MacqError
from macq.graphs import (
    Multigraph,
    gparking_enumerate,
    inversion_poly,
    inversion_poly_recursive,
    parking_gen,
    parking_weight,
    sandpile_gen,
    sandpile_recurrent,
    level,
    tutte,
    tutte_at,
    tutte_at_1q,
    tutte_cumulant_form,
)
from macq.macdonald import (
    HOOK_VARIANTS,
    CumulantProblem,
    column_problem,
    cumulant_by_definition,
    cumulant_combinatorial,
    cumulant_qsym,
    fully_colored,
    haglund,
    hook_kostka,
    parse_partition,
)
from macq.parallel import default_workers
from macq.symfunc import QSymExpansion, SymFunc

EXIT_INVALID = 1
EXIT_MISMATCH = 2

TUTTE_NAMES = {"t": "x", "q": "y"}


class Mismatch(Exception):
    def __init__(self, message: str, diff: dict):
        super().__init__(message)
        self.diff = diff


# ---------------------------------------------------------------------------
# output


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _render_poly(p: MPoly, fmt: str, names=None, header: dict | None = None) -> str:
    if fmt == "json":
        return json.dumps({**(header or {}), "text": p.format(names=names), "terms": p.to_json()}, sort_keys=True)
    if fmt == "latex":
        return p.format("latex", names=names)
    return p.format(names=names)


def _render_symfunc(f: SymFunc, fmt: str, header: dict | None = None) -> str:
    if fmt == "json":
        return json.dumps({**(header or {}), **f.to_json()}, sort_keys=True)
    return f.format("latex" if fmt == "latex" else "text")


def _render_qsym(F: QSymExpansion, fmt: str, header: dict | None = None) -> str:
    if fmt == "json":
        return json.dumps({**(header or {}), **F.to_json()}, sort_keys=True)
    lines = []
    for d, c in F.items():
        idx = ",".join(map(str, sorted(d)))
        if fmt == "latex":
            lines.append(f"({c.format('latex')})\\,F_{{{F.degree},\\{{{idx}\\}}}}")
        else:
            lines.append(f"F[{idx}]: {c.format()}")
    if not lines:
        return "0"
    return " + ".join(lines) if fmt == "latex" else "\n".join(lines)


def _render_symfunc_or_qsym(obj, fmt, header=None) -> str:
    if isinstance(obj, QSymExpansion):
        return _render_qsym(obj, fmt, header)
    return _render_symfunc(obj, fmt, header)


def _symfunc_diff(a: SymFunc, b: SymFunc) -> dict:
    am, bm = a.to("m"), b.to("m")
    keys = sorted(am.support() | bm.support(), key=tuple, reverse=True)
    return {
        str(list(k)).replace(" ", ""): {"left": am[k].format(), "right": bm[k].format()}
        for k in keys
        if am[k] != bm[k]
    }


# ---------------------------------------------------------------------------
# input


def _load_graph(path: str) -> Multigraph:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from None
    try:
        return Multigraph.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"{path} is not a graph description: {exc}") from None


def _to_basis(f: SymFunc, basis: str) -> SymFunc:
    return f.to(basis).integral()


# ---------------------------------------------------------------------------
# verbs


def cmd_macdonald(args) -> int:
    lam = parse_partition(args.l)
    header = {"partition": list(lam)}
    if args.basis == "F":
        out = cumulant_qsym(CumulantProblem([lam]))
    else:
        out = _to_basis(haglund(lam), args.basis)
    _emit(_render_symfunc_or_qsym(out, args.format, header))
    return 0


def cmd_cumulant(args) -> int:
    problem = CumulantProblem.parse(args.l)
    header = {"problem": problem.to_json()}
    if args.route == "def":
        f = cumulant_by_definition(problem)
    elif args.route == "comb":
        f = cumulant_combinatorial(problem)
    else:
        f = cumulant_by_definition(problem)
        g = cumulant_combinatorial(problem)
        if f != g:
            raise Mismatch("definition and combinatorial routes differ", _symfunc_diff(f, g))
    _emit(_render_symfunc(_to_basis(f, args.basis), args.format, header))
    return 0


def cmd_hook_kostka(args) -> int:
    problem = CumulantProblem.parse(args.l)
    values = [args.s] if args.s is not None else range(problem.n if args.variant == "kostka" else problem.n + 1)
    results = [(s, hook_kostka(problem, s, args.variant)) for s in values]
    if args.format == "json":
        _emit(json.dumps({
            "problem": problem.to_json(),
            "variant": args.variant,
            "values": {str(s): p.format() for s, p in results},
        }, sort_keys=True))
    elif len(results) == 1:
        _emit(_render_poly(results[0][1], args.format))
    else:
        _emit("\n".join(f"s={s}: {_render_poly(p, args.format)}" for s, p in results))
    return 0


def cmd_fully_colored(args) -> int:
    mu = parse_partition(args.m)
    column_problem(mu)  # validates
    f = _to_basis(fully_colored(mu), args.basis)
    _emit(_render_symfunc(f, args.format, {"partition": list(mu)}))
    return 0


def cmd_tutte(args) -> int:
    g = _load_graph(args.g)
    if args.spec == "1,q":
        p, names = tutte_at_1q(g), None
    elif args.spec == "1,1":
        p, names = tutte_at(g, 1, 1), None
    else:
        p, names = tutte(g), TUTTE_NAMES
    _emit(_render_poly(p, args.format, names, {"spec": args.spec}))
    return 0


INVERSION_ROUTES = {
    "tree": inversion_poly,
    "tutte": tutte_at_1q,
    "recursive": inversion_poly_recursive,
    "cumulant": tutte_cumulant_form,
}


def cmd_inversion_poly(args) -> int:
    g = _load_graph(args.g)
    routes = list(INVERSION_ROUTES) if args.route == "all" else [args.route]
    values = {r: INVERSION_ROUTES[r](g) for r in routes}
    if args.format == "json":
        _emit(json.dumps({r: p.format() for r, p in values.items()}, sort_keys=True))
    elif len(values) == 1:
        _emit(_render_poly(values[routes[0]], args.format))
    else:
        _emit("\n".join(f"{r}: {_render_poly(p, args.format)}" for r, p in values.items()))
    if len(set(values.values())) > 1:
        raise Mismatch("inversion polynomial routes differ", {r: p.format() for r, p in values.items()})
    return 0


def cmd_gparking(args) -> int:
    g = _load_graph(args.g)
    if args.list:
        rows = [(f, parking_weight(g, f)) for f in gparking_enumerate(g)]
        if args.format == "json":
            _emit(json.dumps({
                "vertices": list(g.nonroot),
                "functions": [{"values": list(f), "weight": w} for f, w in rows],
            }))
        else:
            _emit("\n".join(f"{list(f)} weight={w}" for f, w in rows) or "(none)")
        return 0
    _emit(_render_poly(parking_gen(g), args.format))
    return 0


def cmd_sandpile(args) -> int:
    g = _load_graph(args.g)
    if args.list:
        rows = [(u, level(g, u)) for u in sandpile_recurrent(g)]
        if args.format == "json":
            _emit(json.dumps({
                "vertices": list(g.nonroot),
                "configurations": [{"chips": list(u), "level": k} for u, k in rows],
            }))
        else:
            _emit("\n".join(f"{list(u)} level={k}" for u, k in rows) or "(none)")
        return 0
    _emit(_render_poly(sandpile_gen(g), args.format))
    return 0


def cmd_verify(args) -> int:
    from macq.checks import run_suite

    rows = run_suite(args.suite, args.max_size, args.threads)
    failed = [r for r in rows if not r.ok]
    if args.format == "json":
        _emit(json.dumps({
            "suite": args.suite,
            "max_size": args.max_size,
            "checked": len(rows),
            "failed": [{"item": r.item, "detail": r.detail} for r in failed],
        }, sort_keys=True))
    else:
        width = max((len(r.item) for r in rows), default=4)
        lines = [f"{'item'.ljust(width)}  status"]
        for r in rows:
            status = "pass" if r.ok else f"FAIL {r.detail}"
            lines.append(f"{r.item.ljust(width)}  {status}")
        lines.append(f"{args.suite}: {len(rows) - len(failed)}/{len(rows)} passed")
        _emit("\n".join(lines))
    return EXIT_MISMATCH if failed else 0


# ---------------------------------------------------------------------------
# parser


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--threads", type=_positive_int, default=None,
                        help="worker processes for sweeps (default: $MACQ_THREADS or all cores)")

    parser = argparse.ArgumentParser(prog="macq", description="Macdonald cumulants and G-inversion polynomials.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("macdonald", parents=[common], help="H~_lambda by the filling formula")
    p.add_argument("-l", required=True, metavar="PARTITION", help='e.g. "2,1"')
    p.add_argument("--basis", choices=("m", "s", "F"), default="m")
    p.set_defaults(func=cmd_macdonald)

    p = sub.add_parser("cumulant", parents=[common], help="Macdonald cumulant of several partitions")
    p.add_argument("-l", required=True, metavar="PARTITIONS", help='e.g. "2,1;1,1"')
    p.add_argument("--basis", choices=("m", "s"), default="m")
    p.add_argument("--route", choices=("def", "comb", "both"), default="comb")
    p.set_defaults(func=cmd_cumulant)

    p = sub.add_parser("hook-kostka", parents=[common], help="hook Schur coefficients of a cumulant")
    p.add_argument("-l", required=True, metavar="PARTITIONS")
    p.add_argument("-s", type=int, default=None, help="hook leg length (default: all)")
    p.add_argument("--variant", choices=HOOK_VARIANTS, default="kostka")
    p.set_defaults(func=cmd_hook_kostka)

    p = sub.add_parser("fully-colored", parents=[common], help="cumulant of the columns of mu")
    p.add_argument("-m", required=True, metavar="PARTITION")
    p.add_argument("--basis", choices=("m", "s"), default="m")
    p.set_defaults(func=cmd_fully_colored)

    p = sub.add_parser("tutte", parents=[common], help="Tutte polynomial of a multigraph")
    p.add_argument("-g", required=True, metavar="GRAPH_JSON")
    p.add_argument("--spec", choices=("1,q", "1,1", "xy"), default="xy")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("inversion-poly", parents=[common], help="G-inversion polynomial")
    p.add_argument("-g", required=True, metavar="GRAPH_JSON")
    p.add_argument("--route", choices=(*INVERSION_ROUTES, "all"), default="tree")
    p.set_defaults(func=cmd_inversion_poly)

    p = sub.add_parser("gparking", parents=[common], help="G-parking functions")
    p.add_argument("-g", required=True, metavar="GRAPH_JSON")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_gparking)

    p = sub.add_parser("sandpile", parents=[common], help="recurrent sandpile configurations")
    p.add_argument("-g", required=True, metavar="GRAPH_JSON")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_sandpile)

    p = sub.add_parser("verify", parents=[common], help="run an invariant sweep")
    p.add_argument("--suite", choices=("axioms", "main", "hooks", "graphs"), required=True)
    p.add_argument("--max-size", type=_positive_int, default=4)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else 0
    try:
        if args.threads is None:
            args.threads = default_workers()
        return args.func(args)
    except Mismatch as exc:
        print(f"macq: {exc}", file=sys.stderr)
        _emit(json.dumps({"mismatch": str(exc), "diff": exc.diff}, sort_keys=True))
        return EXIT_MISMATCH
    except (MacqError, ValueError) as exc:
        print(f"macq: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
