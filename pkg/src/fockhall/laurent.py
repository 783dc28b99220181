"""Laurent polynomials in one variable ``v`` with integer coefficients.

Everything in the package is built over this ring: wedge coefficients, Hall
structure constants, canonical basis entries.  Values are immutable.

The finite fields used for counting have ``Q = v^-2`` elements, so a count
polynomial in ``Q`` is turned into a Laurent polynomial by that substitution.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple, Union

Number = Union[int, Fraction]


class LaurentPoly:
    """Sparse Laurent polynomial ``sum c_k v^k`` with integer ``c_k``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, int], int, None] = None):
        if coeffs is None:
            self._c: Dict[int, int] = {}
        elif isinstance(coeffs, int):
            self._c = {0: coeffs} if coeffs else {}
        else:
            self._c = {int(k): int(c) for k, c in coeffs.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, d: Dict[int, int]) -> "LaurentPoly":
        # trusted constructor: d has no zero values
        p = object.__new__(cls)
        p._c = d
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exp: coeff} if coeff else {})

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._c)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def __getitem__(self, k: int) -> int:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def min_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    def max_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def is_constant(self) -> bool:
        return not self._c or set(self._c) == {0}

    # ring operations

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self._c) < len(other._c):
            a, b = other._c, self._c
        else:
            a, b = self._c, other._c
        d = dict(a)
        for k, c in b.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({k: c * other for k, c in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(other._c) == 1:
            ((e, f),) = other._c.items()
            return LaurentPoly._raw({k + e: c * f for k, c in self._c.items()})
        d: Dict[int, int] = {}
        for k1, c1 in self._c.items():
            for k2, c2 in other._c.items():
                k = k1 + k2
                d[k] = d.get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: c for k, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._c) == 1:
                ((k, c),) = self._c.items()
                if c in (1, -1):
                    return LaurentPoly._raw({-k * (-e): c ** (-e)})
            raise ValueError("negative power of a non-unit")
        out = ONE
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by ``v^e``."""
        if not e:
            return self
        return LaurentPoly._raw({k + e: c for k, c in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ``ArithmeticError`` if not divisible."""
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self._c:
            return ZERO
        rem = dict(self._c)
        lo_o, hi_o = other.min_degree(), other.max_degree()
        lead = other._c[hi_o]
        quot: Dict[int, int] = {}
        lo_s = min(rem)
        while rem:
            hi = max(rem)
            if hi - hi_o < lo_s - lo_o:
                raise ArithmeticError("not exactly divisible")
            c = rem[hi]
            if c % lead:
                raise ArithmeticError("not exactly divisible")
            q = c // lead
            e = hi - hi_o
            quot[e] = q
            for k, oc in other._c.items():
                kk = k + e
                s = rem.get(kk, 0) - q * oc
                if s:
                    rem[kk] = s
                else:
                    rem.pop(kk, None)
        return LaurentPoly._raw(quot)

    # involution and evaluation

    def bar(self) -> "LaurentPoly":
        return LaurentPoly._raw({-k: c for k, c in self._c.items()})

    def eval_at(self, t: Number) -> Fraction:
        return eval_at(self, t)

    def constant_term(self) -> int:
        return self._c.get(0, 0)

    def truncate_below(self, e: int) -> "LaurentPoly":
        """Drop every term of degree ``>= e``."""
        return LaurentPoly._raw({k: c for k, c in self._c.items() if k < e})

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return format_laurent(self)


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
V = LaurentPoly._raw({1: 1})
VINV = LaurentPoly._raw({-1: 1})


def v_power(e: int) -> LaurentPoly:
    return LaurentPoly._raw({e: 1})


def as_laurent(x: Union[LaurentPoly, int]) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly(int(x))


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def eval_at(p: LaurentPoly, t: Number) -> Fraction:
    t = Fraction(t)
    if t == 0:
        raise ValueError("evaluation at v=0 undefined for negative exponents")
    return sum((Fraction(c) * t ** k for k, c in p._c.items()), Fraction(0))


def quantum_integer(l: int) -> LaurentPoly:
    """Balanced ``[l] = (v^l - v^-l)/(v - v^-1)``."""
    if l < 0:
        return -quantum_integer(-l)
    return LaurentPoly._raw({e: 1 for e in range(-(l - 1), l, 2)})


def quantum_factorial(l: int) -> LaurentPoly:
    out = ONE
    for k in range(1, l + 1):
        out = out * quantum_integer(k)
    return out


def _solve_rational(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
    n = len(rows[0])
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_row = 0
    pivots = []
    for col in range(n):
        p = next((r for r in range(piv_row, len(m)) if m[r][col] != 0), None)
        if p is None:
            continue
        m[piv_row], m[p] = m[p], m[piv_row]
        inv = 1 / m[piv_row][col]
        m[piv_row] = [x * inv for x in m[piv_row]]
        for r in range(len(m)):
            if r != piv_row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[piv_row])]
        pivots.append(col)
        piv_row += 1
    for r in range(piv_row, len(m)):
        if m[r][n] != 0:
            raise ValueError("count data inconsistent with polynomiality")
    sol = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        sol[col] = m[r][n]
    return sol


def interpolate(points: Iterable[Tuple[int, int]], degree_bound: int) -> LaurentPoly:
    """Fit counts ``(Q, #)`` by a polynomial in ``Q`` and substitute ``Q = v^-2``.

    Every sample is used, so extra points act as a consistency check.
    """
    pts = sorted({(int(q), int(c)) for q, c in points})
    qs = [q for q, _ in pts]
    if len(set(qs)) != len(qs):
        raise ValueError("count data inconsistent with polynomiality")
    if len(qs) < degree_bound + 1:
        raise ValueError(
            f"need at least {degree_bound + 1} field sizes, got {len(qs)}")
    rows = [[Fraction(q) ** k for k in range(degree_bound + 1)] for q in qs]
    coeffs = _solve_rational(rows, [Fraction(c) for _, c in pts])
    out = {}
    for k, c in enumerate(coeffs):
        if c.denominator != 1:
            raise ValueError("count data inconsistent with polynomiality")
        if c:
            out[-2 * k] = int(c)
    return LaurentPoly._raw(out)


def count_polynomial_coeffs(p: LaurentPoly) -> Dict[int, int]:
    """Inverse of the ``Q = v^-2`` substitution: ``{power of Q: coeff}``."""
    out = {}
    for k, c in p._c.items():
        if k > 0 or k % 2:
            raise ValueError("not a polynomial in Q = v^-2")
        out[-k // 2] = c
    return out


# text format

_TERM = re.compile(r"([+-]?)(\d*)(\*?v(?:\^\(?([+-]?\d+)\)?)?)?")


def format_laurent(p: LaurentPoly) -> str:
    if not p._c:
        return "0"
    return " + ".join(f"{c}*v^{k}" for k, c in sorted(p._c.items()))


def parse_laurent(s: str) -> LaurentPoly:
    """Parse the output of :func:`format_laurent`; also tolerates ``v``, ``-v^2``, ``3``."""
    text = s.replace(" ", "").replace("+-", "-")
    if not text:
        raise ValueError("empty Laurent polynomial string")
    if text == "0":
        return ZERO
    d: Dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse Laurent polynomial {s!r}")
        if m.group(3) and m.group(3).startswith("*") and not m.group(2):
            raise ValueError(f"cannot parse Laurent polynomial {s!r}")
        c = int(m.group(2)) if m.group(2) else 1
        if m.group(1) == "-":
            c = -c
        if not m.group(3):
            k = 0
        elif m.group(4) is None:
            k = 1
        else:
            k = int(m.group(4))
        d[k] = d.get(k, 0) + c
        pos = m.end()
        if pos < len(text) and text[pos] not in "+-":
            raise ValueError(f"cannot parse Laurent polynomial {s!r}")
    return LaurentPoly(d)


class RationalFunction:
    """Quotient of Laurent polynomials; no normal form, equality by cross-multiplication."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator, denominator=ONE):
        numerator = as_laurent(numerator)
        denominator = as_laurent(denominator)
        if not denominator:
            raise ZeroDivisionError("rational function with zero denominator")
        self.numerator = numerator
        self.denominator = denominator

    def __add__(self, other):
        o = _as_rf(other)
        return RationalFunction(self.numerator * o.denominator + o.numerator * self.denominator,
                                self.denominator * o.denominator)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        o = _as_rf(other)
        return RationalFunction(self.numerator * o.numerator, self.denominator * o.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_rf(other)
        if not o.numerator:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.numerator * o.denominator, self.denominator * o.numerator)

    def __eq__(self, other):
        try:
            o = _as_rf(other)
        except TypeError:
            return NotImplemented
        return self.numerator * o.denominator == o.numerator * self.denominator

    __hash__ = None  # no canonical form

    def is_zero(self) -> bool:
        return not self.numerator

    def bar(self) -> "RationalFunction":
        return RationalFunction(self.numerator.bar(), self.denominator.bar())

    def eval_at(self, t: Number) -> Fraction:
        den = eval_at(self.denominator, t)
        if den == 0:
            raise ZeroDivisionError("pole at evaluation point")
        return eval_at(self.numerator, t) / den

    def to_laurent(self) -> LaurentPoly:
        """Exact quotient when the denominator divides the numerator."""
        return self.numerator.divexact(self.denominator)

    def __repr__(self):
        return f"RationalFunction(({self.numerator}) / ({self.denominator}))"


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (LaurentPoly, int)):
        return RationalFunction(as_laurent(x))
    raise TypeError(f"cannot coerce {type(x).__name__} to RationalFunction")
