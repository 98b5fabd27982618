"""Loop-allowed multigraphs and the G-inversion polynomial.

The polynomial ``I_G(q) = T_G(1, q)`` is available through four independent
routes (spanning trees with kappa-inversions, the Tutte subgraph expansion,
kappa-free trees with q-integer weights, and a set-partition cumulant), plus
G-parking functions and recurrent sandpile configurations.

Disconnected graphs give ``0`` for every polynomial route; the enumeration
routines (parking, sandpile) raise :class:`DisconnectedError` instead.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Sequence, TypeVar

from macq.algebra import ONE, Q, T, ZERO, MPoly, evaluate, exact_divide, q_minus_one_power, qint
from macq.errors import DisconnectedError

SetPartition = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Multigraph:
    """Multigraph on labelled vertices; repeated pairs are parallel edges, ``(i, i)`` a loop."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    root: int

    def __init__(self, vertices, edges: Iterable[Sequence[int]] = (), root: int | None = None):
        if isinstance(vertices, int):
            vertices = tuple(range(1, vertices + 1))
        vertices = tuple(sorted(vertices))
        if not vertices:
            raise ValueError("a multigraph needs at least one vertex")
        vset = set(vertices)
        norm = []
        for e in edges:
            i, j = e
            if i not in vset or j not in vset:
                raise ValueError(f"edge {tuple(e)} has an endpoint outside {list(vertices)}")
            norm.append((min(i, j), max(i, j)))
        root = vertices[0] if root is None else root
        if root not in vset:
            raise ValueError(f"root {root} is not a vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "root", root)

    @classmethod
    def from_counts(cls, vertices, counts: Mapping[tuple[int, int], int], root=None) -> "Multigraph":
        edges = [e for e, m in counts.items() for _ in range(m)]
        return cls(vertices, edges, root)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @cached_property
    def _mult(self) -> Counter:
        return Counter(self.edges)

    def mult(self, i: int, j: int) -> int:
        """``e_{i,j}(G)``; for ``i == j`` the number of loops at ``i``."""
        return self._mult.get((min(i, j), max(i, j)), 0)

    @property
    def loop_count(self) -> int:
        return sum(1 for i, j in self.edges if i == j)

    def loops_at(self, w: int) -> int:
        return self.mult(w, w)

    def degree(self, i: int) -> int:
        """Number of edge ends at ``i`` (a loop contributes two)."""
        return sum((2 if a == b else 1) for a, b in self.edges if i in (a, b))

    def nonloop_degree(self, i: int) -> int:
        return sum(1 for a, b in self.edges if a != b and i in (a, b))

    @property
    def nonroot(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v != self.root)

    @cached_property
    def simple_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted({e for e in self.edges if e[0] != e[1]}))

    def is_connected(self) -> bool:
        return _components(self.vertices, self.edges) == 1

    def induced(self, block: Iterable[int]) -> "Multigraph":
        block = set(block)
        return Multigraph(
            tuple(block),
            [e for e in self.edges if e[0] in block and e[1] in block],
        )

    def relabel(self, mapping: Mapping[int, int]) -> "Multigraph":
        return Multigraph(
            tuple(mapping[v] for v in self.vertices),
            [(mapping[a], mapping[b]) for a, b in self.edges],
            mapping[self.root],
        )

    def with_root(self, root: int) -> "Multigraph":
        return Multigraph(self.vertices, self.edges, root)

    def to_json(self) -> dict:
        if self.vertices != tuple(range(1, len(self.vertices) + 1)):
            raise ValueError("JSON form needs vertices 1..r")
        return {"vertices": len(self.vertices), "edges": [list(e) for e in self.edges], "root": self.root}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "Multigraph":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["vertices"]), [tuple(e) for e in data.get("edges", [])], data.get("root"))


def _find(parent: dict, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _components(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> int:
    parent = {v: v for v in vertices}
    count = len(parent)
    for a, b in edges:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[ra] = rb
            count -= 1
    return count


def simplify(g: Multigraph) -> Multigraph:
    """Drop loops and collapse parallel edges."""
    return Multigraph(g.vertices, g.simple_edges, g.root)


# ---------------------------------------------------------------------------
# spanning trees


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: tuple[tuple[int, int], ...]  # (vertex, parent) for non-root vertices

    @cached_property
    def parent_of(self) -> dict[int, int]:
        return dict(self.parent)

    @cached_property
    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {self.root: []}
        for v, p in self.parent:
            out.setdefault(v, [])
            out.setdefault(p, []).append(v)
        return out

    def descendants(self, w: int) -> list[int]:
        """``w`` together with everything below it."""
        out, stack = [], [w]
        while stack:
            v = stack.pop()
            out.append(v)
            stack.extend(self.children.get(v, ()))
        return out

    def ancestors(self, w: int) -> list[int]:
        out = []
        while w != self.root:
            w = self.parent_of[w]
            out.append(w)
        return out

    def edges(self) -> list[tuple[int, int]]:
        return [(min(v, p), max(v, p)) for v, p in self.parent]


def spanning_trees(g: Multigraph) -> Iterator[SpanningTree]:
    """Every spanning tree of the simple graph underlying ``g``, rooted at ``g.root``."""
    verts = g.vertices
    simple = g.simple_edges
    n = len(verts)
    for subset in itertools.combinations(simple, n - 1):
        if _components(verts, subset) != 1:
            continue
        adj: dict[int, list[int]] = {v: [] for v in verts}
        for a, b in subset:
            adj[a].append(b)
            adj[b].append(a)
        parent = {}
        stack = [g.root]
        seen = {g.root}
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    parent[w] = v
                    stack.append(w)
        yield SpanningTree(g.root, tuple(sorted(parent.items())))


def kappa_inversions(tree: SpanningTree, g: Multigraph) -> list[tuple[int, int]]:
    """Pairs ``(i, j)`` avoiding the root with ``i`` an ancestor of ``j``, ``i > j``,
    and ``j`` adjacent in ``g`` to the parent of ``i``."""
    out = []
    for j in g.vertices:
        if j == tree.root:
            continue
        for i in tree.ancestors(j):
            if i == tree.root or i <= j:
                continue
            if g.mult(tree.parent_of[i], j):
                out.append((i, j))
    return out


def kappa_statistic(tree: SpanningTree, g: Multigraph) -> int:
    return sum(g.mult(tree.parent_of[i], j) for i, j in kappa_inversions(tree, g))


@lru_cache(maxsize=None)
def inversion_poly(g: Multigraph) -> MPoly:
    """``q^{loops} sum_T q^{kappa(T)} prod_{ij in T} [e_ij]_q`` over trees of the simple graph."""
    if not g.is_connected():
        return ZERO
    total = ZERO
    for tree in spanning_trees(g):
        term = MPoly.monomial(q=kappa_statistic(tree, g))
        for a, b in tree.edges():
            term = term * qint(g.mult(a, b))
        total = total + term
    return total.shift(q=g.loop_count)


def inversion_poly_recursive(g: Multigraph) -> MPoly:
    """Sum over kappa-free trees of ``prod_w [delta_T(w)]_q``."""
    if not g.is_connected():
        return ZERO
    total = ZERO
    for tree in spanning_trees(g):
        if kappa_inversions(tree, g):
            continue
        term = ONE
        for w, p in tree.parent:
            delta = sum(g.mult(i, p) for i in tree.descendants(w))
            term = term * qint(delta)
        total = total + term
    return total.shift(q=g.loop_count)


# ---------------------------------------------------------------------------
# Tutte polynomial and its relatives


def _subgraph_census(g: Multigraph) -> Counter:
    """Counter of ``(components, edge count)`` over all edge subsets."""
    census: Counter = Counter()
    edges = g.edges
    for k in range(len(edges) + 1):
        for subset in itertools.combinations(edges, k):
            census[(_components(g.vertices, subset), k)] += 1
    return census


@lru_cache(maxsize=None)
def tutte(g: Multigraph) -> MPoly:
    """Tutte polynomial with ``x`` stored in the ``t`` slot and ``y`` in the ``q`` slot.

    Returns zero for a disconnected graph.
    """
    if not g.is_connected():
        return ZERO
    v = g.vertex_count
    total = ZERO
    for (c, k), count in _subgraph_census(g).items():
        total = total + count * (T - 1) ** (c - 1) * (Q - 1) ** (k - v + c)
    return total


def tutte_at(g: Multigraph, x, y) -> MPoly:
    """Specialise ``T_G(x, y)``; ``x`` and ``y`` may be integers or polynomials."""
    return evaluate(tutte(g), {"t": x, "q": y})


def tutte_at_1q(g: Multigraph) -> MPoly:
    return evaluate(tutte(g), {"t": 1})


def tutte_cumulant_form(g: Multigraph) -> MPoly:
    """Alternating set-partition sum of ``q^{#E|_B}``, divided by ``(q-1)^{#V-1}``."""
    within = {}
    total = ZERO
    for pi in set_partitions(g.vertices):
        k = len(pi)
        term = MPoly.const((-1) ** (k - 1) * factorial(k - 1))
        deg = 0
        for block in pi:
            if block not in within:
                bs = set(block)
                within[block] = sum(1 for a, b in g.edges if a in bs and b in bs)
            deg += within[block]
        total = total + term.shift(q=deg)
    return exact_divide(total, q_minus_one_power(g.vertex_count - 1))


def connected_subgraph_gen(g: Multigraph) -> MPoly:
    """``sum q^{#H}`` over edge subsets ``H`` connecting every vertex."""
    total = ZERO
    for (c, k), count in _subgraph_census(g).items():
        if c == 1:
            total = total + MPoly.monomial(q=k, c=count)
    return total


def tutte_recursion(g: Multigraph, w: int | None = None) -> MPoly:
    """``T_G(1, q)`` by vertex removal: blocks of ``V - {w}`` weighted by ``[d_G(B, w)]_q``."""
    w = g.vertices[0] if w is None else w
    return _tutte_rec(g, w)


@lru_cache(maxsize=None)
def _tutte_rec(g: Multigraph, w: int) -> MPoly:
    rest = [v for v in g.vertices if v != w]
    loops = MPoly.monomial(q=g.loops_at(w))
    if not rest:
        return loops
    total = ZERO
    for pi in set_partitions(rest):
        term = ONE
        for block in pi:
            d = sum(g.mult(w, b) for b in block)
            if d == 0:
                term = ZERO
                break
            sub = g.induced(block)
            term = term * qint(d) * _tutte_rec(sub, sub.vertices[0])
            if not term:
                break
        total = total + term
    return total * loops


# ---------------------------------------------------------------------------
# G-parking functions and the sandpile model


def _require_connected(g: Multigraph):
    if not g.is_connected():
        raise DisconnectedError("parking functions and sandpiles need a connected graph")


def _outdeg(g: Multigraph, i: int, subset: set) -> int:
    return sum(1 for a, b in g.edges if a != b and ((a == i and b not in subset) or (b == i and a not in subset)))


def _nonempty_subsets(items: Sequence[int]) -> Iterator[set]:
    for k in range(1, len(items) + 1):
        for c in itertools.combinations(items, k):
            yield set(c)


def is_parking(g: Multigraph, f: Sequence[int]) -> bool:
    """``f`` lists values on ``g.nonroot`` in order."""
    values = dict(zip(g.nonroot, f))
    for subset in _nonempty_subsets(g.nonroot):
        if not any(values[i] < _outdeg(g, i, subset) for i in subset):
            return False
    return True


def gparking_enumerate(g: Multigraph) -> Iterator[tuple[int, ...]]:
    """G-parking functions as value tuples aligned with ``g.nonroot``."""
    _require_connected(g)
    ranges = [range(g.nonloop_degree(i)) for i in g.nonroot]
    for f in itertools.product(*ranges):
        if is_parking(g, f):
            yield f


def parking_weight(g: Multigraph, f: Sequence[int]) -> int:
    return len(g.edges) - g.vertex_count + 1 - sum(f)


def parking_gen(g: Multigraph) -> MPoly:
    counts = Counter(parking_weight(g, f) for f in gparking_enumerate(g))
    return MPoly({(w, 0, 0): c for w, c in counts.items()})


def dhar_check(g: Multigraph, u: Sequence[int]) -> bool:
    """Stable and, for every nonempty ``U`` avoiding the root, some ``i in U`` has
    ``u(i) >= sum_{j in U} e_{i,j}`` (a loop counts with both ends)."""
    chips = dict(zip(g.nonroot, u))
    if any(chips[i] >= g.degree(i) or chips[i] < 0 for i in g.nonroot):
        return False
    for subset in _nonempty_subsets(g.nonroot):
        ok = False
        for i in subset:
            inside = sum(g.mult(i, j) * (2 if i == j else 1) for j in subset)
            if chips[i] >= inside:
                ok = True
                break
        if not ok:
            return False
    return True


def sandpile_recurrent(g: Multigraph) -> Iterator[tuple[int, ...]]:
    """Recurrent configurations (chip counts aligned with ``g.nonroot``)."""
    _require_connected(g)
    ranges = [range(g.degree(i)) for i in g.nonroot]
    for u in itertools.product(*ranges):
        if dhar_check(g, u):
            yield u


def level(g: Multigraph, u: Sequence[int]) -> int:
    return sum(u) + g.degree(g.root) - len(g.edges)


def sandpile_gen(g: Multigraph) -> MPoly:
    counts = Counter(level(g, u) for u in sandpile_recurrent(g))
    return MPoly({(w, 0, 0): c for w, c in counts.items()})


def sandpile_to_parking(g: Multigraph, u: Sequence[int]) -> tuple[int, ...]:
    return tuple(g.degree(i) - c - 1 for i, c in zip(g.nonroot, u))


# ---------------------------------------------------------------------------
# set partitions and cumulants


def set_partitions(ground: int | Iterable[int]) -> Iterator[SetPartition]:
    """All set partitions, via restricted growth strings (deterministic order).

    Blocks are sorted tuples listed by their smallest element.
    """
    if isinstance(ground, int):
        if ground < 0:
            raise ValueError("ground set size must be nonnegative")
        ground = range(1, ground + 1)
    items = sorted(ground)
    n = len(items)
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(k: int, m: int):
        if k == n:
            blocks: list[list[int]] = [[] for _ in range(m + 1)]
            for x, b in zip(items, rgs):
                blocks[b].append(x)
            yield tuple(tuple(b) for b in blocks)
            return
        for b in range(m + 2):
            rgs[k] = b
            yield from rec(k + 1, max(m, b))

    rgs[0] = 0
    yield from rec(1, 0)


V = TypeVar("V")


def joint_cumulant(moments: Callable[[frozenset], V], ground: Iterable[int], one=1) -> V:
    """``sum_pi (-1)^{#pi-1} (#pi-1)! prod_{B in pi} u_B``."""
    total = None
    for pi in set_partitions(list(ground)):
        k = len(pi)
        term = one * ((-1) ** (k - 1) * factorial(k - 1))
        for block in pi:
            term = term * moments(frozenset(block))
        total = term if total is None else total + term
    return total


def moments_from_cumulants(cumulants: Callable[[frozenset], V], ground: Iterable[int], one=1) -> V:
    """``u_J = sum_pi prod_{B in pi} kappa_B``."""
    total = None
    for pi in set_partitions(list(ground)):
        term = one
        for block in pi:
            term = term * cumulants(frozenset(block))
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------------------
# increasing trees


def increasing_trees(n: int) -> Iterator[dict[int, int]]:
    """Parent maps of trees on ``1..n`` rooted at 1 with labels increasing away from the root."""
    for parents in itertools.product(*(range(1, i) for i in range(2, n + 1))):
        yield {i: p for i, p in zip(range(2, n + 1), parents)}


def increasing_tree_poly(a: Sequence[int]) -> MPoly:
    """``sum_T prod_{1 < i <= n} [delta_T(i)]_q`` with ``a = (a_2, ..., a_n)``."""
    n = len(a) + 1
    weight = {i: a[i - 2] for i in range(2, n + 1)}
    total = ZERO
    for parent in increasing_trees(n):
        # labels increase downwards, so children always carry larger labels
        delta = dict(weight)
        for i in range(n, 1, -1):
            if parent[i] != 1:
                delta[parent[i]] += delta[i]
        term = ONE
        for i in range(2, n + 1):
            term = term * qint(delta[i])
        total = total + term
    return total


# ---------------------------------------------------------------------------
# sweeps


def all_multigraphs(vertices: int, max_edges: int, connected: bool = True) -> Iterator[Multigraph]:
    """Every multigraph (loops allowed) on ``1..vertices`` with at most ``max_edges`` edges."""
    slots = [(i, j) for i in range(1, vertices + 1) for j in range(i, vertices + 1)]
    for m in range(max_edges + 1):
        for edges in itertools.combinations_with_replacement(slots, m):
            g = Multigraph(vertices, edges)
            if not connected or g.is_connected():
                yield g


def random_multigraph(rng, vertices: int, max_edges: int, loops: bool = True) -> Multigraph:
    """A connected multigraph: a random spanning tree plus extra random edges."""
    edges = [(rng.randrange(1, v), v) for v in range(2, vertices + 1)]
    extra = rng.randint(0, max(0, max_edges - len(edges)))
    for _ in range(extra):
        i = rng.randint(1, vertices)
        j = rng.randint(1, vertices)
        if i == j and not loops:
            continue
        edges.append((i, j))
    return Multigraph(vertices, edges)
