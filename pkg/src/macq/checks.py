"""Invariant sweeps behind ``macq verify``.

Each sweep yields :class:`Check` rows; a row fails when two exact routes to
the same quantity disagree or a positivity/integrality guard trips.
"""

from __future__ import annotations

from dataclasses import dataclass

from macq.algebra import ZERO
from macq.errors import MacqError
from macq.graphs import (
    all_multigraphs,
    inversion_poly,
    inversion_poly_recursive,
    parking_gen,
    sandpile_gen,
    tutte_at_1q,
    tutte_cumulant_form,
)
from macq.macdonald import (
    CumulantProblem,
    cumulant_by_definition,
    cumulant_combinatorial,
    cumulant_numerator,
    hook_kostka,
    hook_shape,
    problem_sweep,
    q_one_valuation,
    verify_axioms,
)
from macq.parallel import pmap
from macq.shapes import partitions_of
from macq.symfunc import plethysm_special


@dataclass(frozen=True)
class Check:
    suite: str
    item: str
    ok: bool
    detail: str = ""


def _axioms(lam) -> Check:
    rep = verify_axioms(lam)
    return Check("axioms", str(list(lam)), rep.ok, "; ".join(rep.failures))


def _main(problem: CumulantProblem) -> Check:
    name = str(problem)
    try:
        comb = cumulant_combinatorial(problem)
        defn = cumulant_by_definition(problem)
    except MacqError as exc:
        return Check("main", name, False, f"{type(exc).__name__}: {exc}")
    problems = []
    if comb != defn:
        problems.append("combinatorial != definition")
    if not all(c.is_nonnegative() and c.is_integral() for c in comb.coeffs.values()):
        problems.append("negative or non-integral coefficient")
    num = cumulant_numerator(problem)
    low = [q_one_valuation(c) for c in num.coeffs.values()]
    if any(v is not None and v < problem.r - 1 for v in low):
        problems.append("numerator does not vanish to order r-1 at q=1")
    return Check("main", name, not problems, "; ".join(problems))


def _hooks(problem: CumulantProblem) -> Check:
    name = str(problem)
    f = cumulant_by_definition(problem)
    schur = f.to("s")
    n = problem.n
    problems = []
    kostka = []
    for s in range(n):
        k = hook_kostka(problem, s)
        kostka.append(k)
        if k != schur[hook_shape(n, s)]:
            problems.append(f"s={s}: {k} != {schur[hook_shape(n, s)]}")
        if not k.is_nonnegative():
            problems.append(f"s={s}: negative coefficient")
    pleth = plethysm_special(f, "1-u")
    for s in range(n + 1):
        claim = hook_kostka(problem, s, "claim")
        expected = (kostka[s] if s < n else ZERO) + (kostka[s - 1] if s >= 1 else ZERO)
        from_pleth = pleth.coefficient_in("u", s) * (-1) ** s
        if not (claim == expected == from_pleth):
            problems.append(f"s={s}: relation fails")
    return Check("hooks", name, not problems, "; ".join(problems))


def _graph(g) -> Check:
    values = {
        "tree": inversion_poly(g),
        "tutte": tutte_at_1q(g),
        "recursive": inversion_poly_recursive(g),
        "cumulant": tutte_cumulant_form(g),
        "parking": parking_gen(g),
        "sandpile": sandpile_gen(g),
    }
    ok = len(set(values.values())) == 1
    detail = "" if ok else ", ".join(f"{k}={v}" for k, v in values.items())
    return Check("graphs", str([list(e) for e in g.edges]) + f" on {g.vertex_count}", ok, detail)


def _problems(max_size: int) -> list[CumulantProblem]:
    out = []
    for r in (1, 2, 3):
        out.extend(problem_sweep(max_size, r))
    return out


def run_suite(suite: str, max_size: int, workers: int | None = None) -> list[Check]:
    if max_size < 1:
        raise ValueError("max size must be positive")
    if suite == "axioms":
        items = [lam for n in range(1, max_size + 1) for lam in partitions_of(n)]
        return pmap(_axioms, items, workers)
    if suite == "main":
        return pmap(_main, _problems(max_size), workers)
    if suite == "hooks":
        return pmap(_hooks, _problems(max_size), workers)
    if suite == "graphs":
        # max_size bounds the vertex count; edges allowed up to max_size + 2
        items = [g for v in range(1, max_size + 1) for g in all_multigraphs(v, max_size + 2)]
        return pmap(_graph, items, workers)
    raise ValueError(f"unknown suite {suite!r}")


SUITES = ("axioms", "main", "hooks", "graphs")
