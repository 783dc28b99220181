"""Exact linear algebra over the rational function field Q(v).

Thin layer over sympy's sparse fraction-field elements.  Rows are dicts
``column -> element`` so large, sparse relation systems stay cheap.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.fields import field

from .laurent import LaurentPoly

K, VF = field("v", QQ)

Row = Dict[Hashable, object]


def to_field(p: LaurentPoly):
    out = K(0)
    for e, c in p.items():
        out += c * VF ** e
    return out


def _poly_terms(poly) -> Dict[int, object]:
    return {m[0]: c for m, c in poly.terms()}


def from_field(x) -> LaurentPoly:
    """Convert back to a Laurent polynomial; raises if ``x`` is not one."""
    num, den = _poly_terms(x.numer), _poly_terms(x.denom)
    if len(den) != 1:
        raise ArithmeticError(f"{x} is not a Laurent polynomial")
    (dexp, dc), = den.items()
    out = {}
    for e, c in num.items():
        q = QQ(c) / QQ(dc)
        if q.denominator != 1:
            raise ArithmeticError(f"{x} has non-integral coefficients")
        out[e - dexp] = int(q.numerator)
    return LaurentPoly(out)


def is_laurent(x) -> bool:
    try:
        from_field(x)
        return True
    except ArithmeticError:
        return False


def _bar_poly(poly):
    return {-e: c for e, c in _poly_terms(poly).items()}


def field_bar(x):
    """``v -> 1/v`` on field elements."""
    def build(d):
        out = K(0)
        for e, c in d.items():
            out += K(c) * VF ** e
        return out
    return build(_bar_poly(x.numer)) / build(_bar_poly(x.denom))


def rref(rows: List[Row], order: Sequence[Hashable]) -> Tuple[List[Row], List[Hashable]]:
    """Reduced row echelon form with pivots chosen in column ``order``.

    Returns the nonzero reduced rows and their pivot columns, each row
    normalized to have coefficient one at its pivot.
    """
    rank = {c: k for k, c in enumerate(order)}
    pivots: Dict[Hashable, Row] = {}
    for row in rows:
        r = {c: x for c, x in row.items() if x}
        # reduce against existing pivots, then pick the earliest column
        while r:
            col = min(r, key=rank.__getitem__)
            if col in pivots:
                f = r[col]
                for c, x in pivots[col].items():
                    y = r.get(c, 0) - f * x
                    if y:
                        r[c] = y
                    else:
                        r.pop(c, None)
                continue
            inv = 1 / r[col]
            r = {c: x * inv for c, x in r.items()}
            # back-substitute into existing pivot rows
            for pr in pivots.values():
                f = pr.get(col)
                if f:
                    for c, x in r.items():
                        y = pr.get(c, 0) - f * x
                        if y:
                            pr[c] = y
                        else:
                            pr.pop(c, None)
            pivots[col] = r
            break
    cols = sorted(pivots, key=rank.__getitem__)
    # finish back substitution so every pivot row is fully reduced
    for col in reversed(cols):
        r = pivots[col]
        for other in cols:
            if other == col:
                continue
            pr = pivots[other]
            f = pr.get(col)
            if f:
                for c, x in r.items():
                    y = pr.get(c, 0) - f * x
                    if y:
                        pr[c] = y
                    else:
                        pr.pop(c, None)
    return [pivots[c] for c in cols], cols


def nullspace(rows: List[Row], columns: Sequence[Hashable]) -> List[Row]:
    """Basis of ``{x : row . x = 0 for all rows}``, one vector per free column."""
    red, piv = rref(rows, columns)
    pivset = set(piv)
    basis = []
    for free in columns:
        if free in pivset:
            continue
        vec = {free: K(1)}
        for r, p in zip(red, piv):
            x = r.get(free)
            if x:
                vec[p] = -x
        basis.append(vec)
    return basis


def rank(rows: List[Row], columns: Sequence[Hashable]) -> int:
    return len(rref(rows, columns)[1])


def _unit_inverse(c: LaurentPoly):
    """Inverse of ``c`` if it is a unit ``+-v^k`` of the Laurent ring."""
    if len(c.coeffs) != 1:
        return None
    (e, a), = c.items()
    if a not in (1, -1):
        return None
    return LaurentPoly({-e: a})


def _divisible_pivot(r, allowed, rank):
    """A pivot whose coefficient divides the whole row in the Laurent ring."""
    for c in sorted((c for c in r if c in allowed), key=rank.__getitem__):
        p = r[c]
        try:
            return c, {c2: x.divexact(p) for c2, x in r.items()}
        except ArithmeticError:
            continue
    return None, r


def rref_units(rows: List[Dict[Hashable, LaurentPoly]], order: Sequence[Hashable],
               allowed) -> Dict[Hashable, Dict[Hashable, LaurentPoly]]:
    """Fully reduced echelon form computed inside the Laurent ring.

    Pivots are restricted to columns in ``allowed``; unit coefficients are
    preferred (earliest in ``order``), otherwise a coefficient dividing the
    whole row.  Returns ``{pivot column: row}``, or ``None`` if some row has
    no such pivot (the caller then falls back to :func:`rref` over the
    field).
    """
    rank = {c: k for k, c in enumerate(order)}
    pivots: Dict[Hashable, Dict[Hashable, LaurentPoly]] = {}

    def reduce(r):
        for c in [c for c in r if c in pivots]:
            f = r.get(c)
            if not f:
                continue
            for c2, x in pivots[c].items():
                y = r.get(c2, LaurentPoly()) - f * x
                if y:
                    r[c2] = y
                else:
                    r.pop(c2, None)
        return r

    pending = [dict(r) for r in rows]
    while pending:
        deferred = []
        for r in pending:
            r = reduce({c: x for c, x in r.items() if x})
            if not r:
                continue
            cands = [(rank[c], c, inv) for c, x in r.items() if c in allowed
                     for inv in (_unit_inverse(x),) if inv is not None]
            if cands:
                _, col, inv = min(cands, key=lambda t: t[0])
                r = {c: x * inv for c, x in r.items()}
            else:
                col, r = _divisible_pivot(r, allowed, rank)
                if col is None:
                    deferred.append(r)
                    continue
            for pr in pivots.values():
                f = pr.get(col)
                if f:
                    for c, x in r.items():
                        y = pr.get(c, LaurentPoly()) - f * x
                        if y:
                            pr[c] = y
                        else:
                            pr.pop(c, None)
            pivots[col] = r
        if len(deferred) == len(pending):
            remaining = [r for r in (reduce(d) for d in deferred) if r]
            return None if remaining else pivots
        pending = deferred
    return pivots
