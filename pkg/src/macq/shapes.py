"""Partitions, Young diagrams, colored diagrams, fillings and their statistics.

Coordinates follow the French convention: a box ``(i, j)`` sits in column
``i`` and row ``j`` (both 1-based), row 1 at the bottom.  Fillings store their
rows bottom-first.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence, Union

from macq.errors import BoxOutsideError, NotStandardError, SizeMismatchError


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for a, b in zip(parts, parts[1:]):
            if b > a:
                raise ValueError(f"parts of a partition must weakly decrease: {parts}")
        if parts and parts[-1] <= 0:
            raise ValueError(f"parts of a partition must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_composition(cls, parts: Iterable[int]) -> "Partition":
        """Sort and drop zeros."""
        return cls(sorted((p for p in parts if p), reverse=True))

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def boxes(self) -> list["Box"]:
        return [Box(i, j) for j, row in enumerate(self, 1) for i in range(1, row + 1)]

    def __contains__(self, box) -> bool:  # type: ignore[override]
        if isinstance(box, tuple) and len(box) == 2 and not isinstance(box, Partition):
            i, j = box
            return 1 <= j <= len(self) and 1 <= i <= self[j - 1]
        return super().__contains__(box)

    def __repr__(self):
        return f"Partition({list(self)})"


class Box(NamedTuple):
    column: int
    row: int


def partitions(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``n`` in lexicographically decreasing order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield Partition((first,) + rest)


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    return tuple(partitions(n))


def conjugate(p: Sequence[int]) -> Partition:
    if not p:
        return Partition()
    return Partition(sum(1 for part in p if part >= j) for j in range(1, p[0] + 1))


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff ``a <= b`` in dominance order."""
    if sum(a) != sum(b):
        raise SizeMismatchError(f"{list(a)} and {list(b)} have different sizes")
    sa = sb = 0
    for k in range(max(len(a), len(b))):
        sa += a[k] if k < len(a) else 0
        sb += b[k] if k < len(b) else 0
        if sa > sb:
            return False
    return True


def oplus(a: Sequence[int], b: Sequence[int]) -> Partition:
    """Entrywise sum after zero padding."""
    m = max(len(a), len(b))
    return Partition(
        (a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(m)
    )


def n_statistic(mu: Sequence[int]) -> int:
    """``n(mu) = sum_i (i - 1) mu_i``."""
    return sum(k * part for k, part in enumerate(mu))


def _check_box(lam: Sequence[int], box: tuple[int, int]) -> tuple[int, int]:
    i, j = box
    if not (1 <= j <= len(lam) and 1 <= i <= lam[j - 1]):
        raise BoxOutsideError(f"box {tuple(box)} is not in {list(lam)}")
    return i, j


def arm(lam: Sequence[int], box: tuple[int, int]) -> int:
    i, j = _check_box(lam, box)
    return lam[j - 1] - i


def coarm(lam: Sequence[int], box: tuple[int, int]) -> int:
    i, _ = _check_box(lam, box)
    return i - 1


def leg(lam: Sequence[int], box: tuple[int, int]) -> int:
    i, j = _check_box(lam, box)
    return conjugate(lam)[i - 1] - j


def coleg(lam: Sequence[int], box: tuple[int, int]) -> int:
    _, j = _check_box(lam, box)
    return j - 1


# ---------------------------------------------------------------------------
# colored diagrams


@dataclass(frozen=True)
class ColoredDiagram:
    """The diagram of ``lambda^B`` with its columns colored by source labels.

    ``labels[k]`` is the color carried by ``sources[k]``.  Column ``c`` of the
    shape (1-based) comes from column ``column_back_index[c-1]`` of the source
    colored ``column_color[c-1]``.
    """

    sources: tuple[Partition, ...]
    labels: tuple[int, ...]
    shape: Partition
    column_color: tuple[int, ...]
    column_back_index: tuple[int, ...]

    @classmethod
    def from_columns(
        cls,
        sources: Sequence[Sequence[int]],
        column_color: Sequence[int],
        labels: Sequence[int] | None = None,
    ) -> "ColoredDiagram":
        """Build a diagram from an explicit column arrangement.

        The k-th column of color b is the k-th column of that source.
        """
        sources = tuple(Partition(s) for s in sources)
        labels = tuple(labels) if labels is not None else tuple(range(1, len(sources) + 1))
        by_label = dict(zip(labels, sources))
        seen: dict[int, int] = {}
        back = []
        heights = []
        for b in column_color:
            seen[b] = seen.get(b, 0) + 1
            back.append(seen[b])
            heights.append(conjugate(by_label[b])[seen[b] - 1])
        for b, src in by_label.items():
            if seen.get(b, 0) != (src[0] if src else 0):
                raise ValueError(f"color {b} does not use all columns of {list(src)}")
        if any(h2 > h1 for h1, h2 in zip(heights, heights[1:])):
            raise ValueError("columns must have weakly decreasing heights")
        return cls(sources, labels, conjugate(heights), tuple(column_color), tuple(back))

    @property
    def r(self) -> int:
        return len(self.sources)

    @property
    def size(self) -> int:
        return self.shape.size

    def source(self, label: int) -> Partition:
        return self.sources[self.labels.index(label)]

    def color(self, box: tuple[int, int]) -> int:
        i, _ = _check_box(self.shape, box)
        return self.column_color[i - 1]

    def source_box(self, box: tuple[int, int]) -> tuple[int, Box]:
        """The color of ``box`` and the identified box of that source diagram."""
        i, j = _check_box(self.shape, box)
        return self.column_color[i - 1], Box(self.column_back_index[i - 1], j)

    @cached_property
    def _column_of(self) -> dict[tuple[int, int], int]:
        return {
            (b, k): c
            for c, (b, k) in enumerate(zip(self.column_color, self.column_back_index), 1)
        }

    def box_of(self, label: int, source_box: tuple[int, int]) -> Box:
        """The box of this diagram identified with ``source_box`` of source ``label``."""
        i, j = source_box
        return Box(self._column_of[(label, i)], j)

    def restrict(self, block: Iterable[int]) -> "ColoredDiagram":
        block = sorted(block)
        return color_sum([self.source(b) for b in block], labels=block)


def color_sum(parts: Sequence[Sequence[int]], labels: Sequence[int] | None = None) -> ColoredDiagram:
    """Colored diagram of the entrywise sum of ``parts``.

    Columns are sorted by decreasing height; ties go to the source listed
    first (i.e. smaller label).
    """
    if not parts:
        raise ValueError("color_sum needs at least one partition")
    sources = tuple(Partition(p) for p in parts)
    labels = tuple(labels) if labels is not None else tuple(range(1, len(sources) + 1))
    cols = []
    for pos, (b, src) in enumerate(zip(labels, sources)):
        for k, h in enumerate(conjugate(src), 1):
            cols.append((-h, pos, k, b))
    cols.sort()
    return ColoredDiagram(
        sources=sources,
        labels=labels,
        shape=conjugate([-c[0] for c in cols]),
        column_color=tuple(c[3] for c in cols),
        column_back_index=tuple(c[2] for c in cols),
    )


# ---------------------------------------------------------------------------
# super letters


@dataclass(frozen=True)
class SuperLetter:
    magnitude: int
    negative: bool = False

    def __post_init__(self):
        if self.magnitude < 1:
            raise ValueError("super letters have positive magnitude")

    def __str__(self):
        return f"{self.magnitude}~" if self.negative else str(self.magnitude)

    @classmethod
    def parse(cls, text: str) -> "SuperLetter":
        text = str(text).strip()
        if text.endswith("~"):
            return cls(int(text[:-1]), True)
        return cls(int(text), False)

    def bar(self) -> "SuperLetter":
        return SuperLetter(self.magnitude, not self.negative)


_BIG = 1 << 20


def order_negatives_last(x: SuperLetter) -> int:
    """Rank in the order 1 < 2 < ... < 2~ < 1~ (the default)."""
    return 2 * _BIG - x.magnitude if x.negative else x.magnitude


def order_negatives_first(x: SuperLetter) -> int:
    """Rank in the order 1~ < 2~ < ... < 1 < 2 < ...; makes 1~ the minimum."""
    return x.magnitude - _BIG if x.negative else x.magnitude


# ---------------------------------------------------------------------------
# fillings

Diagram = Union[Partition, ColoredDiagram]


def _shape_of(diagram) -> Partition:
    return diagram.shape if isinstance(diagram, ColoredDiagram) else Partition(diagram)


@dataclass(frozen=True)
class Filling:
    """Entries of a diagram, rows listed bottom row first."""

    diagram: Diagram
    rows: tuple[tuple, ...]

    def __post_init__(self):
        shape = _shape_of(self.diagram)
        rows = tuple(tuple(r) for r in self.rows)
        if tuple(len(r) for r in rows) != tuple(shape):
            raise ValueError(f"rows {rows} do not match shape {list(shape)}")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> Partition:
        return _shape_of(self.diagram)

    def __getitem__(self, box: tuple[int, int]):
        i, j = _check_box(self.shape, box)
        return self.rows[j - 1][i - 1]

    def items(self) -> Iterator[tuple[Box, object]]:
        for j, row in enumerate(self.rows, 1):
            for i, v in enumerate(row, 1):
                yield Box(i, j), v

    def flat(self) -> tuple:
        return tuple(v for row in self.rows for v in row)

    @classmethod
    def from_flat(cls, diagram: Diagram, values: Sequence) -> "Filling":
        shape = _shape_of(diagram)
        rows, k = [], 0
        for part in shape:
            rows.append(tuple(values[k : k + part]))
            k += part
        return cls(diagram, tuple(rows))

    @classmethod
    def from_map(cls, diagram: Diagram, entries: Mapping[tuple[int, int], object]) -> "Filling":
        shape = _shape_of(diagram)
        return cls(
            diagram,
            tuple(tuple(entries[(i, j)] for i in range(1, part + 1)) for j, part in enumerate(shape, 1)),
        )

    def weight(self) -> dict:
        out: dict = {}
        for v in self.flat():
            out[v] = out.get(v, 0) + 1
        return out

    def to_json(self) -> dict:
        return {"shape": list(self.shape), "rows": [[_letter_json(v) for v in r] for r in self.rows]}

    @classmethod
    def from_json(cls, data: Mapping, diagram: Diagram | None = None) -> "Filling":
        shape = Partition(data["shape"])
        diagram = diagram if diagram is not None else shape
        if _shape_of(diagram) != shape:
            raise ValueError("diagram and JSON shape disagree")
        rows = tuple(tuple(_letter_from_json(v) for v in r) for r in data["rows"])
        if any(isinstance(v, SuperLetter) for r in rows for v in r):
            return SuperFilling(diagram, rows)
        return cls(diagram, rows)


class SuperFilling(Filling):
    """A filling by :class:`SuperLetter` entries."""

    def compatible(self) -> bool:
        """``|sigma(i, j)| >= j`` for every box."""
        return all(v.magnitude >= box.row for box, v in self.items())

    def negatives(self) -> int:
        return sum(1 for v in self.flat() if v.negative)

    def positives(self) -> int:
        return sum(1 for v in self.flat() if not v.negative)


def _letter_json(v):
    return str(v) if isinstance(v, SuperLetter) else v


def _letter_from_json(v):
    if isinstance(v, str):
        return SuperLetter.parse(v)
    return int(v)


# ---------------------------------------------------------------------------
# compiled shape plans (flat indices, bottom row first)


@dataclass(frozen=True)
class ShapePlan:
    shape: Partition
    boxes: tuple[Box, ...]
    # (left, right, below-left or -1) for every same-row pair
    triples: tuple[tuple[int, int, int], ...]
    # (upper, lower, leg(upper) + 1, arm(upper)) for every vertical adjacency
    verticals: tuple[tuple[int, int, int, int], ...]
    # attacking pairs (first, second) with first earlier in reading order
    attacks: tuple[tuple[int, int], ...]
    reading: tuple[int, ...]


@lru_cache(maxsize=None)
def shape_plan(shape: Partition) -> ShapePlan:
    shape = Partition(shape)
    boxes = tuple(shape.boxes())
    index = {b: k for k, b in enumerate(boxes)}
    conj = conjugate(shape)
    triples = []
    verticals = []
    attacks = []
    for j, part in enumerate(shape, 1):
        for i1 in range(1, part + 1):
            for i2 in range(i1 + 1, part + 1):
                below = index[(i1, j - 1)] if j > 1 else -1
                triples.append((index[(i1, j)], index[(i2, j)], below))
                attacks.append((index[(i1, j)], index[(i2, j)]))
            if j > 1:
                verticals.append((index[(i1, j)], index[(i1, j - 1)], conj[i1 - 1] - j + 1, part - i1))
                # upper box strictly right of a lower box in the row below
                for k in range(1, i1):
                    attacks.append((index[(i1, j)], index[(k, j - 1)]))
    reading = tuple(index[(i, j)] for j in range(len(shape), 0, -1) for i in range(1, shape[j - 1] + 1))
    return ShapePlan(shape, boxes, tuple(triples), tuple(verticals), tuple(attacks), reading)


def _ccw_increasing(s1, s2, s3) -> bool:
    return (s1 <= s3 < s2) or (s3 < s2 < s1) or (s2 < s1 <= s3)


def invp_indices(values: Sequence[int], plan: ShapePlan) -> list[tuple[int, int, int]]:
    """Triples of ``plan`` that form inversion pairs for integer ``values``."""
    out = []
    for t in plan.triples:
        a, b, c = t
        s3 = values[c] if c >= 0 else 0  # entries are >= 1, so 0 acts as -infinity
        if _ccw_increasing(values[a], values[b], s3):
            out.append(t)
    return out


def count_invp(values: Sequence[int], plan: ShapePlan) -> int:
    n = 0
    for a, b, c in plan.triples:
        s1 = values[a]
        s2 = values[b]
        s3 = values[c] if c >= 0 else 0
        if (s1 <= s3 < s2) or (s3 < s2 < s1) or (s2 < s1 <= s3):
            n += 1
    return n


def flat_maj(values: Sequence[int], plan: ShapePlan) -> int:
    return sum(w for up, low, w, _ in plan.verticals if values[up] > values[low])


# ---------------------------------------------------------------------------
# statistics on Filling objects


def _plan_for(sigma: Filling) -> ShapePlan:
    return shape_plan(sigma.shape)


def _require_plain(sigma: Filling):
    if isinstance(sigma, SuperFilling):
        raise TypeError("use super_stats for super fillings")


def descents(sigma: Filling) -> frozenset[Box]:
    _require_plain(sigma)
    plan = _plan_for(sigma)
    v = sigma.flat()
    return frozenset(plan.boxes[up] for up, low, _, _ in plan.verticals if v[up] > v[low])


def maj(sigma: Filling) -> int:
    _require_plain(sigma)
    return flat_maj(sigma.flat(), _plan_for(sigma))


def inversion_pairs(sigma: Filling, order=order_negatives_last) -> frozenset[tuple[Box, Box]]:
    """Counterclockwise-increasing same-row pairs; super fillings use the signed rules."""
    plan = _plan_for(sigma)
    if isinstance(sigma, SuperFilling):
        idx = _super_invp(sigma.flat(), plan, order)
    else:
        idx = invp_indices(sigma.flat(), plan)
    return frozenset((plan.boxes[a], plan.boxes[b]) for a, b, _ in idx)


def inversions(sigma: Filling) -> frozenset[tuple[Box, Box]]:
    """Attacking pairs whose earlier entry (in reading order) is strictly larger."""
    _require_plain(sigma)
    plan = _plan_for(sigma)
    v = sigma.flat()
    return frozenset((plan.boxes[a], plan.boxes[b]) for a, b in plan.attacks if v[a] > v[b])


def inv(sigma: Filling) -> int:
    """Number of inversion pairs."""
    _require_plain(sigma)
    return count_invp(sigma.flat(), _plan_for(sigma))


def inv_via_attacks(sigma: Filling) -> int:
    """``#Inv - sum of arms over descents``, computed independently of :func:`inv`."""
    _require_plain(sigma)
    plan = _plan_for(sigma)
    v = sigma.flat()
    n_inv = sum(1 for a, b in plan.attacks if v[a] > v[b])
    return n_inv - sum(arm_ for up, low, _, arm_ in plan.verticals if v[up] > v[low])


def reading_word(sigma: Filling) -> tuple:
    v = sigma.flat()
    return tuple(v[k] for k in _plan_for(sigma).reading)


def standard_filling(diagram: Diagram, word: Sequence[int]) -> Filling:
    """The standard filling whose reading word is ``word``."""
    plan = shape_plan(_shape_of(diagram))
    if sorted(word) != list(range(1, len(plan.boxes) + 1)):
        raise NotStandardError(f"{list(word)} is not a permutation of 1..{len(plan.boxes)}")
    values = [0] * len(word)
    for pos, k in enumerate(plan.reading):
        values[k] = word[pos]
    return Filling.from_flat(diagram, values)


def ides_of_word(word: Sequence[int]) -> frozenset[int]:
    """``{i : i + 1 appears left of i}``."""
    pos = {v: k for k, v in enumerate(word)}
    return frozenset(i for i in range(1, len(word)) if pos[i + 1] < pos[i])


def ides(sigma: Filling) -> frozenset[int]:
    word = reading_word(sigma)
    if sorted(word) != list(range(1, len(word) + 1)):
        raise NotStandardError("inverse descents need a standard filling")
    return ides_of_word(word)


# ---------------------------------------------------------------------------
# super statistics


class SuperStats(NamedTuple):
    descents: frozenset
    maj: int
    inversion_pairs: frozenset
    negatives: int
    positives: int
    compatible: bool


def _le_sign(x, y, x_neg: bool, sign_negative: bool) -> bool:
    """``x <=_sign y`` on ranks; equality counts only when the letter's sign matches."""
    return x < y or (x == y and x_neg == sign_negative)


def _super_invp(values: Sequence[SuperLetter], plan: ShapePlan, order) -> list:
    ranks = [order(v) for v in values]
    neg = [v.negative for v in values]
    minus_inf = float("-inf")
    out = []
    for t in plan.triples:
        a, b, c = t
        r1, r2, n1, n2 = ranks[a], ranks[b], neg[a], neg[b]
        if c >= 0:
            r3, n3 = ranks[c], neg[c]
        else:
            r3, n3 = minus_inf, False
        le_p = lambda x, y, nx: _le_sign(x, y, nx, False)  # noqa: E731
        le_m = lambda x, y, nx: _le_sign(x, y, nx, True)  # noqa: E731
        if (
            (le_p(r1, r3, n1) and le_m(r3, r2, n3))
            or (le_m(r3, r2, n3) and le_m(r2, r1, n2))
            or (le_m(r2, r1, n2) and le_p(r1, r3, n1))
        ):
            out.append(t)
    return out


def super_invp_indices(values: Sequence[SuperLetter], plan: ShapePlan, order=order_negatives_last):
    return _super_invp(values, plan, order)


def super_descent_indices(values: Sequence[SuperLetter], plan: ShapePlan, order=order_negatives_last):
    """Verticals ``(upper, lower, leg+1, arm)`` with ``sigma(upper) >=_- sigma(lower)``."""
    out = []
    for vert in plan.verticals:
        up, low = vert[0], vert[1]
        ru, rl = order(values[up]), order(values[low])
        if ru > rl or (ru == rl and values[up].negative):
            out.append(vert)
    return out


def super_stats(sigma: SuperFilling, order=order_negatives_last) -> SuperStats:
    plan = _plan_for(sigma)
    v = sigma.flat()
    des = super_descent_indices(v, plan, order)
    pairs = _super_invp(v, plan, order)
    return SuperStats(
        descents=frozenset(plan.boxes[d[0]] for d in des),
        maj=sum(d[2] for d in des),
        inversion_pairs=frozenset((plan.boxes[a], plan.boxes[b]) for a, b, _ in pairs),
        negatives=sigma.negatives(),
        positives=sigma.positives(),
        compatible=sigma.compatible(),
    )


# ---------------------------------------------------------------------------
# enumeration


def enumerate_fillings(diagram: Diagram, max_entry: int) -> Iterator[Filling]:
    """All fillings with entries in ``1..max_entry``, lexicographic in reading order."""
    if max_entry < 1:
        raise ValueError("max_entry must be >= 1")
    plan = shape_plan(_shape_of(diagram))
    n = len(plan.boxes)
    for word in itertools.product(range(1, max_entry + 1), repeat=n):
        values = [0] * n
        for pos, k in enumerate(plan.reading):
            values[k] = word[pos]
        yield Filling.from_flat(diagram, values)


def multiset_words(weight: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Distinct arrangements of ``1^w1 2^w2 ...`` in lexicographic order."""
    from sympy.utilities.iterables import multiset_permutations

    letters = [k for k, w in enumerate(weight, 1) for _ in range(w)]
    for perm in multiset_permutations(letters):
        yield tuple(perm)


def fillings_of_weight(diagram: Diagram, weight: Sequence[int]) -> Iterator[Filling]:
    """Fillings whose entries form the multiset ``{1^w1, 2^w2, ...}``."""
    shape = _shape_of(diagram)
    if sum(weight) != shape.size:
        raise SizeMismatchError("weight and shape sizes differ")
    for values in multiset_words(weight):
        yield Filling.from_flat(diagram, values)


def ssyt(lam: Sequence[int], mu: Sequence[int]) -> Iterator[Filling]:
    """Semistandard tableaux of shape ``lam`` and weight ``mu``.

    Rows weakly increase left to right, columns strictly increase upwards.
    """
    lam = Partition(lam)
    mu = tuple(mu)
    if lam.size != sum(mu):
        raise SizeMismatchError(f"|{list(lam)}| != |{list(mu)}|")
    boxes = lam.boxes()  # bottom row first, left to right
    remaining = list(mu)
    entries: dict[tuple[int, int], int] = {}

    def rec(k: int):
        if k == len(boxes):
            yield Filling.from_map(lam, entries)
            return
        i, j = boxes[k]
        lo = 1
        if i > 1:
            lo = max(lo, entries[(i - 1, j)])
        if j > 1:
            lo = max(lo, entries[(i, j - 1)] + 1)
        for v in range(lo, len(remaining) + 1):
            if remaining[v - 1]:
                remaining[v - 1] -= 1
                entries[(i, j)] = v
                yield from rec(k + 1)
                remaining[v - 1] += 1
        entries.pop((i, j), None)

    yield from rec(0)


def syt(lam: Sequence[int]) -> Iterator[Filling]:
    return ssyt(lam, [1] * sum(lam))


@lru_cache(maxsize=None)
def _kostka(lam: Partition, mu: tuple[int, ...]) -> int:
    return sum(1 for _ in ssyt(lam, mu))


def kostka_number(lam: Sequence[int], mu: Sequence[int]) -> int:
    if sum(lam) != sum(mu):
        raise SizeMismatchError(f"|{list(lam)}| != |{list(mu)}|")
    return _kostka(Partition(lam), tuple(mu))


# ---------------------------------------------------------------------------
# splitting fillings of lambda^[r] along a set partition


def split_filling(sigma: Filling, blocks: Iterable[Iterable[int]]) -> dict[frozenset, Filling]:
    """Fillings of ``lambda^B`` for each block, under the box identification."""
    diagram = sigma.diagram
    if not isinstance(diagram, ColoredDiagram):
        raise TypeError("split_filling needs a filling of a colored diagram")
    out = {}
    for block in blocks:
        block = frozenset(block)
        sub = diagram.restrict(block)
        entries = {}
        for box in sub.shape.boxes():
            b, src = sub.source_box(box)
            entries[box] = sigma[diagram.box_of(b, src)]
        cls = type(sigma)
        out[block] = cls.from_map(sub, entries)
    return out


def merge_fillings(parts: Mapping[frozenset, Filling], diagram: ColoredDiagram) -> Filling:
    """Inverse of :func:`split_filling`."""
    entries = {}
    cls = Filling
    for block, sigma in parts.items():
        cls = type(sigma)
        sub = sigma.diagram
        for box, v in sigma.items():
            b, src = sub.source_box(box)
            entries[diagram.box_of(b, src)] = v
    return cls.from_map(diagram, entries)
