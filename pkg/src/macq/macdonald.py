"""Macdonald polynomials ``H~`` and their cumulants.

``haglund`` treats the filling formula as the definition.  Cumulants are
available by their definition (joint cumulant of products, divided by a power
of ``q - 1``) and by the graph formula, where each filling of the colored
diagram contributes ``I_G(q) t^maj`` with ``G`` built from its inversion pairs.

Filling sums only visit fillings whose content is a partition ``mu``: that
content is exactly the coefficient of ``m_mu``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from macq.algebra import ONE, U, ZERO, MPoly, evaluate, exact_divide, q_minus_one_power
from macq.errors import BoxOutsideError, DegreeMismatchError, SizeMismatchError
from macq.graphs import Multigraph, increasing_tree_poly, inversion_poly, joint_cumulant
from macq.shapes import (
    Box,
    ColoredDiagram,
    Filling,
    Partition,
    ShapePlan,
    SuperLetter,
    color_sum,
    conjugate,
    count_invp,
    dominance_leq,
    flat_maj,
    ides_of_word,
    invp_indices,
    multiset_words,
    n_statistic,
    order_negatives_first,
    order_negatives_last,
    partitions,
    partitions_of,
    shape_plan,
    super_descent_indices,
    super_invp_indices,
)
from macq.symfunc import (
    QSymExpansion,
    SymFunc,
    TwoAlphabetPoly,
    hall_inner,
    plethysm_special,
    unit,
)


# ---------------------------------------------------------------------------
# problems


@dataclass(frozen=True)
class CumulantProblem:
    """An ordered list of partitions ``lambda^1..lambda^r`` and the diagram ``lambda^[r]``."""

    partitions: tuple[Partition, ...]
    colored: ColoredDiagram = field(compare=False, repr=False)

    def __init__(self, partitions: Iterable[Sequence[int]], colored: ColoredDiagram | None = None):
        parts = tuple(Partition(p) for p in partitions)
        if not parts:
            raise ValueError("a cumulant needs at least one partition")
        if any(not p for p in parts):
            raise ValueError("partitions must be nonempty")
        if colored is None:
            colored = color_sum(parts)
        elif colored.sources != parts or colored.labels != tuple(range(1, len(parts) + 1)):
            raise ValueError("colored diagram does not match the partitions")
        object.__setattr__(self, "partitions", parts)
        object.__setattr__(self, "colored", colored)

    @classmethod
    def parse(cls, text: str) -> "CumulantProblem":
        """``"2,1;1,1"`` -> ``((2, 1), (1, 1))``."""
        return cls(parse_partition(chunk) for chunk in text.split(";"))

    @property
    def r(self) -> int:
        return len(self.partitions)

    @property
    def n(self) -> int:
        return self.colored.size

    @property
    def labels(self) -> tuple[int, ...]:
        return self.colored.labels

    def to_json(self) -> dict:
        return {"partitions": [list(p) for p in self.partitions]}

    def __str__(self):
        return ";".join(",".join(map(str, p)) for p in self.partitions)


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        raise ValueError("empty partition")
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}") from None
    return Partition(parts)


def problem_sweep(max_n: int, r: int, min_n: int = 1) -> Iterator[CumulantProblem]:
    """All ordered ``r``-tuples of nonempty partitions with total size in ``[min_n, max_n]``."""
    for n in range(max(min_n, r), max_n + 1):
        for sizes in _compositions(n, r):
            for parts in itertools.product(*(partitions_of(k) for k in sizes)):
                yield CumulantProblem(parts)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Haglund's formula


@lru_cache(maxsize=None)
def _haglund(lam: Partition) -> SymFunc:
    plan = shape_plan(lam)
    out = {}
    for mu in partitions_of(lam.size):
        stats: Counter = Counter()
        for values in multiset_words(mu):
            stats[(count_invp(values, plan), flat_maj(values, plan))] += 1
        out[mu] = _collect(stats)
    return SymFunc(lam.size, "m", out)


def haglund(lam: Sequence[int]) -> SymFunc:
    """``sum_sigma q^inv t^maj x^sigma`` in the monomial basis."""
    lam = Partition(lam)
    if not lam:
        return unit()
    return _haglund(lam)


def _collect(stats: Counter) -> MPoly:
    terms: dict = {}
    for (i, m), k in stats.items():
        terms[(i, m, 0)] = terms.get((i, m, 0), 0) + k
    return MPoly(terms)


# ---------------------------------------------------------------------------
# compiled colored diagrams


@dataclass(frozen=True)
class _Compiled:
    plan: ShapePlan
    colors: tuple[int, ...]  # color of each flat index
    pairs: tuple[tuple[int, int], ...]  # color pair of each slot
    triples: tuple[tuple[int, int, int, int], ...]  # (left, right, below, slot)
    r: int


@lru_cache(maxsize=None)
def _compile(colored: ColoredDiagram) -> _Compiled:
    plan = shape_plan(colored.shape)
    colors = tuple(colored.color(b) for b in plan.boxes)
    pairs = sorted({tuple(sorted((colors[a], colors[b]))) for a, b, _ in plan.triples})
    slot = {p: k for k, p in enumerate(pairs)}
    triples = tuple(
        (a, b, c, slot[tuple(sorted((colors[a], colors[b])))]) for a, b, c in plan.triples
    )
    return _Compiled(plan, colors, tuple(pairs), triples, colored.r)


@lru_cache(maxsize=None)
def _graph(r: int, pairs: tuple, counts: tuple) -> Multigraph:
    return Multigraph.from_counts(r, {p: c for p, c in zip(pairs, counts) if c})


def _graph_poly(comp: _Compiled, counts: tuple) -> MPoly:
    return inversion_poly(_graph(comp.r, comp.pairs, counts))


def _slot_counts(values: Sequence[int], comp: _Compiled) -> tuple[int, ...]:
    counts = [0] * len(comp.pairs)
    for a, b, c, k in comp.triples:
        s1 = values[a]
        s2 = values[b]
        s3 = values[c] if c >= 0 else 0
        if (s1 <= s3 < s2) or (s3 < s2 < s1) or (s2 < s1 <= s3):
            counts[k] += 1
    return tuple(counts)


def build_graph(problem: CumulantProblem, sigma: Filling) -> Multigraph:
    """``G^sigma``: one edge per inversion pair, joining the colors of its two boxes."""
    if sigma.shape != problem.colored.shape:
        raise SizeMismatchError(f"filling of {list(sigma.shape)} on {list(problem.colored.shape)}")
    plan = shape_plan(problem.colored.shape)
    values = sigma.flat()
    if values and isinstance(values[0], SuperLetter):
        pairs = super_invp_indices(values, plan, order_negatives_last)
    else:
        pairs = invp_indices(values, plan)
    col = problem.colored.color
    return Multigraph(problem.r, [(col(plan.boxes[a]), col(plan.boxes[b])) for a, b, _ in pairs])


# ---------------------------------------------------------------------------
# cumulants


def cumulant_combinatorial(problem: CumulantProblem) -> SymFunc:
    """``sum_sigma I_{G^sigma}(q) t^maj(sigma) x^sigma`` in the monomial basis."""
    comp = _compile(problem.colored)
    verticals = comp.plan.verticals
    out = {}
    for mu in partitions_of(problem.n):
        stats: Counter = Counter()
        for values in multiset_words(mu):
            m = 0
            for up, low, w, _ in verticals:
                if values[up] > values[low]:
                    m += w
            stats[(_slot_counts(values, comp), m)] += 1
        total = ZERO
        for (counts, m), k in sorted(stats.items()):
            g = _graph_poly(comp, counts)
            if g:
                total = total + g.shift(t=m) * k
        out[mu] = total
    return SymFunc(problem.n, "m", out)


@lru_cache(maxsize=None)
def _block_maps(colored: ColoredDiagram) -> dict[frozenset, tuple[Partition, tuple[int, ...]]]:
    """For every nonempty block: the shape of ``lambda^B`` and where its boxes sit in ``lambda^[r]``."""
    big = shape_plan(colored.shape)
    index = {b: k for k, b in enumerate(big.boxes)}
    out = {}
    for size in range(1, colored.r + 1):
        for block in itertools.combinations(colored.labels, size):
            sub = colored.restrict(block)
            plan = shape_plan(sub.shape)
            where = []
            for box in plan.boxes:
                b, src = sub.source_box(box)
                where.append(index[colored.box_of(b, src)])
            out[frozenset(block)] = (sub.shape, tuple(where))
    return out


def _numerator_product(problem: CumulantProblem) -> SymFunc:
    colored = problem.colored
    return joint_cumulant(
        lambda block: haglund(colored.restrict(block).shape), problem.labels, one=unit()
    )


def _numerator_split(problem: CumulantProblem) -> SymFunc:
    """Expand every product fillingwise: fillings of ``lambda^[r]`` split into ``sigma_B``."""
    from macq.graphs import set_partitions
    from math import factorial

    maps = _block_maps(problem.colored)
    blocks = sorted(maps, key=lambda b: (len(b), sorted(b)))
    plans = {b: shape_plan(maps[b][0]) for b in blocks}
    pis = [
        ((-1) ** (len(pi) - 1) * factorial(len(pi) - 1), [frozenset(b) for b in pi])
        for pi in set_partitions(problem.labels)
    ]
    out = {}
    for mu in partitions_of(problem.n):
        stats: Counter = Counter()
        for values in multiset_words(mu):
            per_block = {}
            for b in blocks:
                sub_values = [values[k] for k in maps[b][1]]
                per_block[b] = (count_invp(sub_values, plans[b]), flat_maj(sub_values, plans[b]))
            for coeff, pi in pis:
                stats[(sum(per_block[b][0] for b in pi), sum(per_block[b][1] for b in pi))] += coeff
        out[mu] = _collect(stats)
    return SymFunc(problem.n, "m", out)


NUMERATOR_ROUTES = {"product": _numerator_product, "split": _numerator_split}


def cumulant_numerator(problem: CumulantProblem, route: str = "product") -> SymFunc:
    """``sum_pi (-1)^{#pi-1} (#pi-1)! prod_B H~_{lambda^B}`` before dividing."""
    try:
        fn = NUMERATOR_ROUTES[route]
    except KeyError:
        raise ValueError(f"unknown route {route!r}") from None
    return fn(problem).to("m")


def cumulant_by_definition(problem: CumulantProblem, route: str = "product") -> SymFunc:
    num = cumulant_numerator(problem, route)
    d = q_minus_one_power(problem.r - 1)
    out = {mu: exact_divide(c, d) for mu, c in num.items()}
    return SymFunc(problem.n, "m", out).integral()


def q_one_valuation(p: MPoly) -> int | None:
    """Order of vanishing at ``q = 1`` (``None`` for the zero polynomial)."""
    if not p:
        return None
    shifted = evaluate(p, {"q": ONE + U})
    return min(e[2] for e in shifted.terms)


def cumulant_qsym(problem: CumulantProblem) -> QSymExpansion:
    """Fundamental quasisymmetric expansion over standard fillings."""
    comp = _compile(problem.colored)
    plan = comp.plan
    n = problem.n
    stats: Counter = Counter()
    for values in itertools.permutations(range(1, n + 1)):
        word = [values[k] for k in plan.reading]
        d = ides_of_word(word)
        stats[(d, _slot_counts(values, comp), flat_maj(values, plan))] += 1
    coeffs: dict = {}
    for (d, counts, m), k in stats.items():
        g = _graph_poly(comp, counts)
        if g:
            coeffs[d] = coeffs.get(d, ZERO) + g.shift(t=m) * k
    return QSymExpansion(n, coeffs)


# ---------------------------------------------------------------------------
# superfillings


def _super_contribution(problem: CumulantProblem, values: Sequence[SuperLetter], order) -> tuple:
    """Graph slot counts and maj of a superfilling."""
    comp = _compile(problem.colored)
    plan = comp.plan
    counts = [0] * len(comp.pairs)
    slot = {p: k for k, p in enumerate(comp.pairs)}
    for a, b, _ in super_invp_indices(values, plan, order):
        counts[slot[tuple(sorted((comp.colors[a], comp.colors[b])))]] += 1
    m = sum(w for _, _, w, _ in super_descent_indices(values, plan, order))
    return tuple(counts), m


def cumulant_pleth_super(problem: CumulantProblem) -> SymFunc:
    """``kappa[X(t-1)]`` as a sum over superfillings compatible with the diagram."""
    comp = _compile(problem.colored)
    rows = [b.row for b in comp.plan.boxes]
    n = problem.n
    out = {}
    for mu in partitions_of(n):
        stats: Counter = Counter()
        for mags in multiset_words(mu):
            if any(m < row for m, row in zip(mags, rows)):
                continue
            for signs in itertools.product((False, True), repeat=n):
                values = [SuperLetter(m, s) for m, s in zip(mags, signs)]
                counts, maj_ = _super_contribution(problem, values, order_negatives_last)
                neg = sum(signs)
                stats[(counts, maj_ + n - neg, neg % 2)] += 1
        total = ZERO
        for (counts, e, odd), k in sorted(stats.items()):
            g = _graph_poly(comp, counts)
            if g:
                total = total + g.shift(t=e) * (-k if odd else k)
        out[mu] = total
    return SymFunc(n, "m", out)


def cumulant_super_series(problem: CumulantProblem, k: int, order=order_negatives_last) -> TwoAlphabetPoly:
    """``omega_Y kappa[X + Y]`` in ``k`` letters of each sign, summed over superfillings."""
    comp = _compile(problem.colored)
    n = problem.n
    letters = [SuperLetter(i, s) for i in range(1, k + 1) for s in (False, True)]
    stats: Counter = Counter()
    for values in itertools.product(letters, repeat=n):
        counts, maj_ = _super_contribution(problem, values, order)
        e = [0] * (2 * k)
        for v in values:
            e[(k if v.negative else 0) + v.magnitude - 1] += 1
        stats[(tuple(e), counts, maj_)] += 1
    out: TwoAlphabetPoly = {}
    for (e, counts, m), c in stats.items():
        g = _graph_poly(comp, counts)
        if g:
            out[e] = out.get(e, ZERO) + g.shift(t=m) * c
    return {e: c for e, c in out.items() if c}


# ---------------------------------------------------------------------------
# hook coefficients


def hook_graph(problem: CumulantProblem, boxes: Iterable[tuple[int, int]]) -> Multigraph:
    """Join each chosen box to every box strictly left of it in its row."""
    colored = problem.colored
    chosen = {Box(*b) for b in boxes}
    edges = []
    for i, j in sorted(chosen):
        if (i, j) not in colored.shape:
            raise BoxOutsideError(f"box {(i, j)} is outside {list(colored.shape)}")
        c = colored.color((i, j))
        for k in range(1, i):
            edges.append((colored.color((k, j)), c))
    return Multigraph(problem.r, edges)


HOOK_VARIANTS = ("kostka", "claim", "super")


def hook_kostka(problem: CumulantProblem, s: int, variant: str = "kostka") -> MPoly:
    """Coefficient of ``s_{(n-s, 1^s)}`` (``"kostka"``) or of ``(-u)^s`` in ``kappa[1-u]``.

    ``"claim"`` sums over box subsets, ``"super"`` over superfillings with
    entries ``1`` and ``1~`` (in the order where ``1~`` comes first).
    """
    n = problem.n
    if variant not in HOOK_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    top = n - 1 if variant == "kostka" else n
    if not 0 <= s <= top:
        raise ValueError(f"s must lie in [0, {top}], got {s}")
    boxes = problem.colored.shape.boxes()
    if variant == "kostka":
        boxes = [b for b in boxes if b != (1, 1)]
    if variant == "super":
        return _hook_super(problem, s)
    total = ZERO
    for chosen in itertools.combinations(boxes, s):
        g = inversion_poly(hook_graph(problem, chosen))
        if g:
            total = total + g.shift(t=sum(b.row - 1 for b in chosen))
    return total


def _hook_super(problem: CumulantProblem, s: int) -> MPoly:
    comp = _compile(problem.colored)
    n = problem.n
    one, bar = SuperLetter(1), SuperLetter(1, True)
    total = ZERO
    for chosen in itertools.combinations(range(n), s):
        values = [one] * n
        for k in chosen:
            values[k] = bar
        counts, m = _super_contribution(problem, values, order_negatives_first)
        g = _graph_poly(comp, counts)
        if g:
            total = total + g.shift(t=m)
    return total


def hook_shape(n: int, s: int) -> Partition:
    return Partition([n - s] + [1] * s)


# ---------------------------------------------------------------------------
# fully colored polynomials


def column_problem(mu: Sequence[int]) -> CumulantProblem:
    mu = Partition(mu)
    if not mu:
        raise ValueError("mu must be nonempty")
    return CumulantProblem([[1] * h for h in conjugate(mu)])


def fully_colored(mu: Sequence[int]) -> SymFunc:
    """Cumulant of the columns of ``mu``."""
    return cumulant_combinatorial(column_problem(mu))


def fully_colored_corner(mu: Sequence[int]) -> MPoly:
    """``t^{n(mu)} P_{mu^t_2, ...}(q)``, the predicted ``s_{1^n}`` coefficient."""
    mu = Partition(mu)
    return increasing_tree_poly(list(conjugate(mu)[1:])).shift(t=n_statistic(mu))


def bareiss_det(matrix: Sequence[Sequence[MPoly]]) -> MPoly:
    """Fraction-free determinant over ``Z[q, t, u]``."""
    a = [[MPoly.const(0) + x for x in row] for row in matrix]
    size = len(a)
    if any(len(row) != size for row in a):
        raise ValueError("matrix must be square")
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, size) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = exact_divide(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[-1][-1] * sign


def fully_colored_matrix(n: int) -> list[list[MPoly]]:
    parts = partitions_of(n)
    rows = []
    for mu in parts:
        f = fully_colored(mu)
        rows.append([f[nu] for nu in parts])
    return rows


# ---------------------------------------------------------------------------
# characterizing conditions


@dataclass(frozen=True)
class AxiomReport:
    partition: Partition
    c1: bool
    c2: bool
    c3: bool
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.c1 and self.c2 and self.c3


def _schur_support_below(f: SymFunc, bound: Partition) -> list[Partition]:
    return [mu for mu in f.to("s").support() if not dominance_leq(mu, bound)]


def verify_axioms(lam: Sequence[int]) -> AxiomReport:
    lam = Partition(lam)
    h = haglund(lam)
    failures = []
    bad1 = _schur_support_below(plethysm_special(h, "X(q-1)"), conjugate(lam))
    if bad1:
        failures.append(f"C1: s{[list(m) for m in bad1]} not below {list(conjugate(lam))}")
    bad2 = _schur_support_below(plethysm_special(h, "X(t-1)"), lam)
    if bad2:
        failures.append(f"C2: s{[list(m) for m in bad2]} not below {list(lam)}")
    top = hall_inner(h, SymFunc.s((lam.size,)))
    c3 = top == 1
    if not c3:
        failures.append(f"C3: <H, s_n> = {top}")
    return AxiomReport(lam, not bad1, not bad2, c3, tuple(failures))


def schur_positive(f: SymFunc) -> bool:
    return all(c.is_nonnegative() for c in f.to("s").coeffs.values())
