"""Exact sparse polynomials in the three indeterminates q, t, u.

Every scalar in the package is an :class:`MPoly`.  Exponent vectors are dense
triples ``(q, t, u)``; coefficients are Python integers, or
:class:`fractions.Fraction` while a power-sum computation is in flight (such
polynomials are called *rational* below and must be cleared with
:meth:`MPoly.integral` before they leave the package).
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from macq.errors import NonDivisibleError, NonIntegralError

Exp = tuple[int, int, int]
Coeff = Union[int, Fraction]

VARS = ("q", "t", "u")
_VAR_INDEX = {name: k for k, name in enumerate(VARS)}
# printing / canonical order of the exponent slots: t, then q, then u
_PRINT_SLOTS = (1, 0, 2)


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _sort_key(e: Exp) -> tuple[int, int, int]:
    return (e[1], e[0], e[2])


class MPoly:
    """Immutable sparse polynomial with exact coefficients.

    >>> q, t = MPoly.var("q"), MPoly.var("t")
    >>> str((q + 1) * (q - 1))
    '-1 + q^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, Coeff] | None = None):
        clean: dict[Exp, Coeff] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != 3 or min(e) < 0:
                        raise ValueError(f"bad exponent vector {e!r}")
                    clean[tuple(e)] = _norm(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exp, Coeff]) -> "MPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Coeff) -> "MPoly":
        return cls._raw({(0, 0, 0): _norm(c)} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MPoly":
        e = [0, 0, 0]
        e[_VAR_INDEX[name]] = power
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, q: int = 0, t: int = 0, u: int = 0, c: Coeff = 1) -> "MPoly":
        return cls._raw({(q, t, u): _norm(c)} if c else {})

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict[Exp, Coeff]:
        return dict(self._terms)

    def items(self) -> list[tuple[Exp, Coeff]]:
        """Terms in canonical order: ascending by (t-degree, q-degree, u-degree)."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coeff(self, q: int = 0, t: int = 0, u: int = 0) -> Coeff:
        return self._terms.get((q, t, u), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self, name: str) -> int:
        k = _VAR_INDEX[name]
        return max((e[k] for e in self._terms), default=-1)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def integral(self) -> "MPoly":
        """Return self, checking that every coefficient is an integer."""
        if not self.is_integral():
            raise NonIntegralError(f"non-integer coefficient in {self}")
        return self

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self._terms.values())

    def variables(self) -> set[str]:
        return {VARS[k] for e in self._terms for k in range(3) if e[k]}

    def coefficient_in(self, name: str, power: int) -> "MPoly":
        """Coefficient of ``name**power`` viewed as a polynomial in the other variables."""
        k = _VAR_INDEX[name]
        out = {}
        for e, c in self._terms.items():
            if e[k] == power:
                e2 = list(e)
                e2[k] = 0
                out[tuple(e2)] = c
        return MPoly._raw(out)

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return MPoly()
            return MPoly._raw({e: _norm(c * other) for e, c in self._terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exp, Coeff] = {}
        get = out.get
        for (bq, bt, bu), bc in b.items():
            for (aq, at, au), ac in a.items():
                e = (aq + bq, at + bt, au + bu)
                out[e] = get(e, 0) + ac * bc
        return MPoly._raw({e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, q: int = 0, t: int = 0, u: int = 0) -> "MPoly":
        """Multiply by the monomial q^q t^t u^u."""
        return MPoly._raw(
            {(e[0] + q, e[1] + t, e[2] + u): c for e, c in self._terms.items()}
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- formatting -----------------------------------------------------

    def format(self, style: str = "text", names: Mapping[str, str] | None = None) -> str:
        """Render in canonical term order.

        ``style`` is ``"text"`` (``2 + q``, ``t^2*q``) or ``"latex"``.
        ``names`` renames variables for display, e.g. ``{"t": "x", "q": "y"}``.
        """
        names = {**{v: v for v in VARS}, **(names or {})}
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.items():
            factors = []
            for k in _PRINT_SLOTS:
                if e[k]:
                    v = names[VARS[k]]
                    if e[k] == 1:
                        factors.append(v)
                    elif style == "latex":
                        factors.append(f"{v}^{{{e[k]}}}")
                    else:
                        factors.append(f"{v}^{e[k]}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if style == "latex":
                mono = "".join(factors)
                if isinstance(mag, Fraction):
                    cs = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}}"
                else:
                    cs = str(mag)
                body = mono if (mag == 1 and mono) else cs + mono
            else:
                mono = "*".join(factors)
                if not mono:
                    body = str(mag)
                elif mag == 1:
                    body = mono
                else:
                    body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"MPoly({self.format()!r})"

    def to_json(self) -> list[dict]:
        return [
            {"q": e[0], "t": e[1], "u": e[2], "c": str(c)} for e, c in self.items()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "MPoly":
        terms: dict[Exp, Coeff] = {}
        for row in data:
            e = (int(row.get("q", 0)), int(row.get("t", 0)), int(row.get("u", 0)))
            terms[e] = terms.get(e, 0) + Fraction(str(row["c"]))
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        """Inverse of :meth:`format` for the text style."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        if s[0] not in "+-":
            s = "+" + s
        terms: dict[Exp, Coeff] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            c: Coeff = 1
            e = [0, 0, 0]
            for factor in body.split("*"):
                m = re.fullmatch(r"([qtu])(?:\^(\d+))?", factor)
                if m:
                    e[_VAR_INDEX[m.group(1)]] += int(m.group(2) or 1)
                else:
                    c = c * Fraction(factor)
            if sign == "-":
                c = -c
            key = tuple(e)
            terms[key] = terms.get(key, 0) + c
        return cls(terms)


ZERO = MPoly()
ONE = MPoly.const(1)
Q = MPoly.var("q")
T = MPoly.var("t")
U = MPoly.var("u")


@lru_cache(maxsize=None)
def qint(n: int) -> MPoly:
    """The q-integer ``[n]_q = 1 + q + ... + q^(n-1)``; zero for ``n = 0``."""
    if n < 0:
        raise ValueError("qint needs n >= 0")
    return MPoly._raw({(k, 0, 0): 1 for k in range(n)})


@lru_cache(maxsize=None)
def q_minus_one_power(k: int) -> MPoly:
    return (Q - 1) ** k


def _lex_leading(p: MPoly) -> Exp:
    return max(p._terms)


def exact_divide(a: MPoly, b: MPoly) -> MPoly:
    """Return ``c`` with ``a == b * c``.

    Raises :class:`NonDivisibleError` when no quotient exists in the
    polynomial ring over the coefficient ring of the inputs (integers unless
    either input carries fractions).
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    rational = not (a.is_integral() and b.is_integral())
    lb = _lex_leading(b)
    cb = b._terms[lb]
    rem = dict(a._terms)
    quot: dict[Exp, Coeff] = {}
    bterms = list(b._terms.items())
    while rem:
        la = max(rem)
        ca = rem[la]
        d = (la[0] - lb[0], la[1] - lb[1], la[2] - lb[2])
        if min(d) < 0:
            raise NonDivisibleError(f"{b} does not divide {a}")
        if rational:
            c = _norm(Fraction(ca) / cb)
        else:
            if ca % cb:
                raise NonDivisibleError(f"{b} does not divide {a} over the integers")
            c = ca // cb
        quot[d] = c
        for e, bc in bterms:
            k = (e[0] + d[0], e[1] + d[1], e[2] + d[2])
            v = rem.get(k, 0) - c * bc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return MPoly(quot)


def evaluate(p: MPoly, at: Mapping[str, Union[MPoly, int, Fraction]]) -> MPoly:
    """Substitute some of q, t, u by polynomial values; others stay symbolic."""
    subs = {}
    for name, value in at.items():
        if name not in _VAR_INDEX:
            raise KeyError(f"unknown variable {name!r}")
        subs[_VAR_INDEX[name]] = MPoly._coerce(value)
    if not subs:
        return p
    powers: dict[tuple[int, int], MPoly] = {}

    def power(k: int, n: int) -> MPoly:
        key = (k, n)
        if key not in powers:
            powers[key] = subs[k] ** n
        return powers[key]

    # group by the kept exponents to avoid redundant products
    out = ZERO
    for e, c in p._terms.items():
        kept = [0, 0, 0]
        term = MPoly.const(c)
        for k in range(3):
            if k in subs:
                if e[k]:
                    term = term * power(k, e[k])
            else:
                kept[k] = e[k]
        out = out + term.shift(*kept)
    return out
