"""Homogeneous symmetric functions with polynomial coefficients.

A :class:`SymFunc` is a degree together with a basis tag (``"m"``, ``"s"`` or
``"p"``) and a coefficient map indexed by partitions.  Monomial coefficients
are read as coefficients of the monomial ``x^mu`` so every computation happens
in ``n`` variables for degree ``n``.  Power-sum coefficients may be rational;
results handed back in the ``m`` or ``s`` basis are checked to be integral.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from macq.algebra import ONE, Q, T, U, ZERO, MPoly
from macq.errors import DegreeMismatchError
from macq.shapes import (
    Partition,
    ides,
    kostka_number,
    order_negatives_last,
    partitions_of,
    SuperLetter,
    syt,
)

BASES = ("m", "s", "p")


def _as_poly(c) -> MPoly:
    return c if isinstance(c, MPoly) else MPoly.const(c)


class SymFunc:
    """Immutable basis-tagged symmetric function of a fixed degree."""

    __slots__ = ("degree", "basis", "_coeffs")

    def __init__(self, degree: int, basis: str, coeffs: Mapping[Sequence[int], object] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        clean: dict[Partition, MPoly] = {}
        for lam, c in (coeffs or {}).items():
            lam = Partition(lam)
            if lam.size != degree:
                raise DegreeMismatchError(f"{list(lam)} does not have size {degree}")
            c = _as_poly(c)
            if c:
                clean[lam] = clean[lam] + c if lam in clean else c
        self.degree = degree
        self.basis = basis
        self._coeffs = {k: v for k, v in clean.items() if v}

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, degree: int, basis: str = "m") -> "SymFunc":
        return cls(degree, basis)

    @classmethod
    def m(cls, lam: Sequence[int]) -> "SymFunc":
        return cls(sum(lam), "m", {tuple(lam): ONE})

    @classmethod
    def s(cls, lam: Sequence[int]) -> "SymFunc":
        return cls(sum(lam), "s", {tuple(lam): ONE})

    @classmethod
    def p(cls, lam: Sequence[int]) -> "SymFunc":
        return cls(sum(lam), "p", {tuple(lam): ONE})

    # -- access ----------------------------------------------------------

    @property
    def coeffs(self) -> dict[Partition, MPoly]:
        return dict(self._coeffs)

    def __getitem__(self, lam: Sequence[int]) -> MPoly:
        return self._coeffs.get(Partition(lam), ZERO)

    def items(self) -> list[tuple[Partition, MPoly]]:
        """Entries ordered by partition, lexicographically decreasing."""
        return sorted(self._coeffs.items(), key=lambda kv: tuple(kv[0]), reverse=True)

    def support(self) -> set[Partition]:
        return set(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc(self.degree, self.basis, {k: fn(v) for k, v in self._coeffs.items()})

    # -- arithmetic ------------------------------------------------------

    def _aligned(self, other: "SymFunc") -> "SymFunc":
        if other.degree != self.degree:
            raise DegreeMismatchError(f"degrees {self.degree} and {other.degree} differ")
        return other.to(self.basis)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        other = self._aligned(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out[k] + v if k in out else v
        return SymFunc(self.degree, self.basis, out)

    def __neg__(self) -> "SymFunc":
        return self.map_coeffs(lambda c: -c)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self + (-other)

    def scale(self, c) -> "SymFunc":
        c = _as_poly(c)
        return self.map_coeffs(lambda v: v * c)

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        if other.degree != self.degree:
            return False
        return self.to("m")._coeffs == other.to("m")._coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.to("m")._coeffs.items())))

    # -- conversions -----------------------------------------------------

    def to(self, basis: str) -> "SymFunc":
        if basis == self.basis:
            return self
        return _FROM_M[basis](_TO_M[self.basis](self))

    def integral(self) -> "SymFunc":
        for c in self._coeffs.values():
            c.integral()
        return self

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": self.basis,
            "coeffs": {str(list(lam)).replace(" ", ""): c.format() for lam, c in self.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymFunc":
        import json

        coeffs = {tuple(json.loads(k)): MPoly.parse(v) for k, v in data["coeffs"].items()}
        return cls(int(data["degree"]), data["basis"], coeffs)

    def format(self, style: str = "text") -> str:
        if not self._coeffs:
            return "0"
        lines = []
        for lam, c in self.items():
            if style == "latex":
                idx = ",".join(map(str, lam))
                body = f"{self.basis}_{{{idx}}}"
                lines.append(body if c == 1 else f"({c.format('latex')})\\,{body}")
            else:
                lines.append(f"{self.basis}{str(list(lam)).replace(' ', '')}: {c.format()}")
        return " + ".join(lines) if style == "latex" else "\n".join(lines)

    def __repr__(self):
        body = ", ".join(f"{list(lam)}: {c}" for lam, c in self.items())
        return f"SymFunc({self.degree}, {self.basis!r}, {{{body}}})"


# ---------------------------------------------------------------------------
# transition matrices


@lru_cache(maxsize=None)
def kostka_matrix(n: int) -> dict[tuple[Partition, Partition], int]:
    """Nonzero ``K_{lambda, mu}`` for partitions of ``n``."""
    out = {}
    for lam in partitions_of(n):
        for mu in partitions_of(n):
            k = kostka_number(lam, mu)
            if k:
                out[(lam, mu)] = k
    return out


def _s_to_m(f: SymFunc) -> SymFunc:
    K = kostka_matrix(f.degree)
    out: dict[Partition, MPoly] = {}
    for lam, c in f._coeffs.items():
        for mu in partitions_of(f.degree):
            k = K.get((lam, mu))
            if k:
                out[mu] = out.get(mu, ZERO) + c * k
    return SymFunc(f.degree, "m", out)


def _m_to_s(f: SymFunc) -> SymFunc:
    K = kostka_matrix(f.degree)
    parts = partitions_of(f.degree)  # lexicographically decreasing
    out: dict[Partition, MPoly] = {}
    for idx, lam in enumerate(parts):
        c = f[lam]
        for nu in parts[:idx]:
            k = K.get((nu, lam))
            if k and nu in out:
                c = c - out[nu] * k
        # K is unitriangular, so no division is needed
        if c:
            out[lam] = c.integral()
    return SymFunc(f.degree, "s", out)


@lru_cache(maxsize=None)
def powersum_matrix(n: int) -> dict[tuple[Partition, Partition], int]:
    """Nonzero ``R_{lambda, mu}`` with ``p_lambda = sum_mu R_{lambda,mu} m_mu``."""
    out = {}
    for lam in partitions_of(n):
        prod = SymFunc.m((lam[0],))
        for part in lam[1:]:
            prod = multiply(prod, SymFunc.m((part,)))
        for mu, c in prod._coeffs.items():
            out[(lam, mu)] = c.coeff()
    return out


def _p_to_m(f: SymFunc) -> SymFunc:
    R = powersum_matrix(f.degree)
    out: dict[Partition, MPoly] = {}
    for lam, c in f._coeffs.items():
        for mu in partitions_of(f.degree):
            r = R.get((lam, mu))
            if r:
                out[mu] = out.get(mu, ZERO) + c * r
    return SymFunc(f.degree, "m", out)


def _m_to_p(f: SymFunc) -> SymFunc:
    R = powersum_matrix(f.degree)
    parts = list(reversed(partitions_of(f.degree)))  # lexicographically increasing
    out: dict[Partition, MPoly] = {}
    for idx, mu in enumerate(parts):
        c = f[mu]
        for lam in parts[:idx]:
            r = R.get((lam, mu))
            if r and lam in out:
                c = c - out[lam] * r
        if c:
            out[mu] = c * Fraction(1, R[(mu, mu)])
    return SymFunc(f.degree, "p", out)


_TO_M = {"m": lambda f: f, "s": _s_to_m, "p": _p_to_m}
_FROM_M = {"m": lambda f: f, "s": _m_to_s, "p": _m_to_p}


def to_schur(f: SymFunc) -> SymFunc:
    return f.to("s")


def from_schur(f: SymFunc) -> SymFunc:
    """Monomial expansion of an ``s``-basis function."""
    if f.basis != "s":
        raise ValueError("from_schur expects an s-basis function")
    return f.to("m")


def to_powersum(f: SymFunc) -> SymFunc:
    return f.to("p")


def to_monomial(f: SymFunc) -> SymFunc:
    return f.to("m").integral()


# ---------------------------------------------------------------------------
# operations


def _compositions_under(mu: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    """Vectors ``0 <= alpha <= mu`` (entrywise) with ``sum(alpha) == total``."""
    if not mu:
        if total == 0:
            yield ()
        return
    rest_cap = sum(mu[1:])
    for a in range(max(0, total - rest_cap), min(mu[0], total) + 1):
        for tail in _compositions_under(mu[1:], total - a):
            yield (a,) + tail


def multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Product, read off as coefficients of ``x^mu`` in ``deg f + deg g`` variables."""
    fm, gm = f.to("m"), g.to("m")
    n = f.degree + g.degree
    if f.degree == 0:
        return gm.scale(fm[()])
    if g.degree == 0:
        return fm.scale(gm[()])
    out: dict[Partition, MPoly] = {}
    fc, gc = fm._coeffs, gm._coeffs
    for mu in partitions_of(n):
        acc = ZERO
        for alpha in _compositions_under(mu, f.degree):
            a = fc.get(Partition.from_composition(alpha))
            if a is None:
                continue
            b = gc.get(Partition.from_composition(x - y for x, y in zip(mu, alpha)))
            if b is None:
                continue
            acc = acc + a * b
        if acc:
            out[mu] = acc
    return SymFunc(n, "m", out)


def unit() -> SymFunc:
    return SymFunc(0, "m", {(): ONE})


def omega(f: SymFunc) -> SymFunc:
    """``p_lambda -> (-1)^{|lambda| + l(lambda)} p_lambda``; returned in ``f``'s basis."""
    p = f.to("p")
    out = {lam: c * (-1) ** (lam.size + lam.length) for lam, c in p._coeffs.items()}
    res = SymFunc(f.degree, "p", out).to(f.basis)
    return res if f.basis == "p" else res.integral()


def hall_inner(f: SymFunc, g: SymFunc) -> MPoly:
    if f.degree != g.degree:
        raise DegreeMismatchError(f"degrees {f.degree} and {g.degree} differ")
    fs, gs = f.to("s"), g.to("s")
    total = ZERO
    for lam, c in fs._coeffs.items():
        d = gs._coeffs.get(lam)
        if d is not None:
            total = total + c * d
    return total


ALPHABETS = ("X(t-1)", "X(q-1)", "1-u", "-X")


def _pleth_factor(alphabet: str, i: int) -> MPoly:
    if alphabet == "X(t-1)":
        return MPoly.monomial(t=i) - 1
    if alphabet == "X(q-1)":
        return MPoly.monomial(q=i) - 1
    if alphabet == "-X":
        return MPoly.const(-1)
    raise ValueError(f"unknown alphabet {alphabet!r}")


def plethysm_special(f: SymFunc, alphabet: str):
    """Plethystic substitution through the power-sum basis.

    ``"X(t-1)"``, ``"X(q-1)"`` and ``"-X"`` return a symmetric function in the
    ``m`` basis; ``"1-u"`` returns the scalar polynomial ``f[1 - u]``.
    """
    p = f.to("p")
    if alphabet == "1-u":
        total = ZERO
        for lam, c in p._coeffs.items():
            term = c
            for part in lam:
                term = term * (1 - MPoly.monomial(u=part))
            total = total + term
        return total.integral()
    out = {}
    for lam, c in p._coeffs.items():
        term = c
        for part in lam:
            term = term * _pleth_factor(alphabet, part)
        out[lam] = term
    return SymFunc(f.degree, "p", out).to("m").integral()


# ---------------------------------------------------------------------------
# fundamental quasisymmetric functions


@dataclass(frozen=True)
class QSymExpansion:
    """``sum_D c_D F_{n,D}`` with ``D`` a subset of ``{1, ..., n-1}``."""

    degree: int
    coeffs: Mapping[frozenset, MPoly] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for d, c in self.coeffs.items():
            d = frozenset(d)
            if any(not 1 <= x < self.degree for x in d):
                raise ValueError(f"descent set {sorted(d)} outside [1, {self.degree - 1}]")
            c = _as_poly(c)
            clean[d] = clean[d] + c if d in clean else c
        object.__setattr__(self, "coeffs", {d: c for d, c in clean.items() if c})

    def items(self) -> list[tuple[frozenset, MPoly]]:
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    def __add__(self, other: "QSymExpansion") -> "QSymExpansion":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out[d] + c if d in out else c
        return QSymExpansion(self.degree, out)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "basis": "F",
            "coeffs": {str(sorted(d)).replace(" ", ""): c.format() for d, c in self.items()},
        }


@lru_cache(maxsize=None)
def _fundamental_monomials(n: int, descent: frozenset, nvars: int) -> dict[Partition, int]:
    """m-coefficients of ``F_{n,D}`` in ``nvars`` variables, by index enumeration."""
    out: dict[Partition, int] = {}
    for seq in itertools.combinations_with_replacement(range(1, nvars + 1), n):
        if any(seq[j - 1] >= seq[j] for j in descent):
            continue
        expo = [0] * nvars
        for i in seq:
            expo[i - 1] += 1
        # the monomial x^mu with mu a partition carries the m_mu coefficient
        if all(expo[k] >= expo[k + 1] for k in range(nvars - 1)):
            mu = Partition(e for e in expo if e)
            out[mu] = out.get(mu, 0) + 1
    return out


def qsym_expand(F: QSymExpansion, nvars: int | None = None) -> SymFunc:
    """Collapse to the monomial basis (only meaningful when ``F`` is symmetric)."""
    n = F.degree
    nvars = n if nvars is None else nvars
    out: dict[Partition, MPoly] = {}
    for d, c in F.coeffs.items():
        for mu, k in _fundamental_monomials(n, d, nvars).items():
            out[mu] = out.get(mu, ZERO) + c * k
    return SymFunc(n, "m", out)


def gessel_schur(lam: Sequence[int]) -> QSymExpansion:
    lam = Partition(lam)
    coeffs: dict[frozenset, MPoly] = {}
    for tab in syt(lam):
        d = ides(tab)
        coeffs[d] = coeffs.get(d, ZERO) + ONE
    return QSymExpansion(lam.size, coeffs)


# ---------------------------------------------------------------------------
# two alphabets x_1..x_k, y_1..y_k (finite truncations, used for superization)

TwoAlphabetPoly = dict  # exponent tuple of length 2k -> MPoly


def _tap_mul(a: TwoAlphabetPoly, b: TwoAlphabetPoly) -> TwoAlphabetPoly:
    out: TwoAlphabetPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, ZERO) + ca * cb
    return {e: c for e, c in out.items() if c}


def _tap_add(a: TwoAlphabetPoly, b: TwoAlphabetPoly, scale=ONE) -> TwoAlphabetPoly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, ZERO) + c * scale
    return {e: c for e, c in out.items() if c}


def _powersum_two(i: int, k: int, y_sign: int) -> TwoAlphabetPoly:
    out: TwoAlphabetPoly = {}
    for v in range(k):
        e = [0] * (2 * k)
        e[v] = i
        out[tuple(e)] = ONE
        e = [0] * (2 * k)
        e[k + v] = i
        out[tuple(e)] = MPoly.const(y_sign)
    return out


def _two_alphabet(f: SymFunc, k: int, y_sign_of) -> TwoAlphabetPoly:
    p = f.to("p")
    total: TwoAlphabetPoly = {}
    unit_: TwoAlphabetPoly = {(0,) * (2 * k): ONE}
    for lam, c in p._coeffs.items():
        term = unit_
        for part in lam:
            term = _tap_mul(term, _powersum_two(part, k, y_sign_of(part)))
        total = _tap_add(total, term, c)
    return {e: c.integral() for e, c in total.items()}


def pleth_x_minus_y(f: SymFunc, k: int) -> TwoAlphabetPoly:
    """``f[X - Y]`` truncated to ``k`` variables per alphabet (p-route)."""
    return _two_alphabet(f, k, lambda i: -1)


def superization(f: SymFunc, k: int) -> TwoAlphabetPoly:
    """``omega_Y f[X + Y]``: ``p_i -> p_i(x) + (-1)^{i-1} p_i(y)`` (p-route)."""
    return _two_alphabet(f, k, lambda i: (-1) ** (i - 1))


def _super_alphabet(k: int, order) -> list[SuperLetter]:
    letters = [SuperLetter(i, neg) for i in range(1, k + 1) for neg in (False, True)]
    return sorted(letters, key=order)


def super_fundamental(n: int, descent: frozenset, k: int, order=order_negatives_last) -> TwoAlphabetPoly:
    """``F~_{n,D}(x, y)`` over ``k`` letters of each sign, weakly increasing in ``order``."""
    out: TwoAlphabetPoly = {}
    for seq in itertools.combinations_with_replacement(_super_alphabet(k, order), n):
        ok = True
        for j in range(1, n):
            a, b = seq[j - 1], seq[j]
            if a == b and ((not a.negative and j in descent) or (a.negative and j not in descent)):
                ok = False
                break
        if not ok:
            continue
        e = [0] * (2 * k)
        for x in seq:
            e[(k if x.negative else 0) + x.magnitude - 1] += 1
        e = tuple(e)
        out[e] = out.get(e, ZERO) + ONE
    return out


def super_qsym(F: QSymExpansion, k: int, order=order_negatives_last) -> TwoAlphabetPoly:
    total: TwoAlphabetPoly = {}
    for d, c in F.coeffs.items():
        total = _tap_add(total, super_fundamental(F.degree, d, k, order), c)
    return total


def negate_y(poly: TwoAlphabetPoly, k: int) -> TwoAlphabetPoly:
    """Substitute ``y -> -y``."""
    return {e: c * (-1) ** sum(e[k:]) for e, c in poly.items()}
