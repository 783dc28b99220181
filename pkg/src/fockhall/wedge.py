"""Tensor space, affine Hecke action, and the wedge quotient.

A tensor monomial is a tuple of integers ``(i_1, ..., i_D)`` standing for
``x_{i_1} (x) ... (x) x_{i_D}``.  Vectors are plain dicts from monomials to
``LaurentPoly``.  The Hecke generators act on the right.

The wedge ``Lambda^D`` is the quotient by the images of ``1 + T_k``; its basis
is the set of strictly decreasing monomials.  ``omega_normal_form_oracle``
computes classes by brute-force row reduction, and ``normal_order`` is the
fast rewriting procedure whose two-letter rules are read off the oracle.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .combinatorics import Partition
from .laurent import ONE, ZERO, LaurentPoly, v_power
from . import linalg

Monomial = Tuple[int, ...]
Vector = Dict[Monomial, LaurentPoly]

T_PARAM = v_power(-2)          # the Hecke parameter t = v^-2
T_MINUS_ONE = T_PARAM - 1
V_INV = v_power(-1)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


class WindowTooSmall(ValueError):
    pass


def add_into(acc: Vector, key: Monomial, c: LaurentPoly) -> None:
    if not c:
        return
    old = acc.get(key)
    if old is None:
        acc[key] = c
    else:
        s = old + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def vec_add(*vs: Vector) -> Vector:
    out: Vector = {}
    for v in vs:
        for k, c in v.items():
            add_into(out, k, c)
    return out


def vec_scale(x: Vector, c) -> Vector:
    return {k: a * c for k, a in x.items() if a * c}


# affine Hecke algebra

def _residue_rep(i: int, n: int) -> Tuple[int, int]:
    """``i = a - n*p`` with ``-n < a <= 0``."""
    a = -((-i) % n)
    return a, (a - i) // n


def _finite_pair(a1: int, a2: int) -> List[Tuple[Tuple[int, int], LaurentPoly]]:
    if a1 == a2:
        return [((a1, a2), T_PARAM)]
    if a1 < a2:
        return [((a2, a1), V_INV)]
    return [((a2, a1), V_INV), ((a1, a2), T_MINUS_ONE)]


@lru_cache(maxsize=None)
def _pair_T(i: int, j: int, n: int) -> Tuple[Tuple[Tuple[int, int], LaurentPoly], ...]:
    # x_i (x) x_j = (x_a1 (x) x_a2) X_1^p X_2^q; move the X's through T with
    # f T = T (s f) + (t - 1)(f - s f)/(1 - X_1/X_2)
    a1, p = _residue_rep(i, n)
    a2, q = _residue_rep(j, n)
    out: Dict[Tuple[int, int], LaurentPoly] = {}
    for (b1, b2), c in _finite_pair(a1, a2):
        add_into(out, (b1 - n * q, b2 - n * p), c)
    if p < q:
        for m in range(q - p):
            add_into(out, (a1 - n * (p + m), a2 - n * (q - m)), T_MINUS_ONE)
    elif p > q:
        for m in range(p - q):
            add_into(out, (a1 - n * (q + m), a2 - n * (p - m)), -T_MINUS_ONE)
    return tuple(sorted(out.items()))


def hecke_T(k: int, x: Vector, n: int) -> Vector:
    """Right action of ``T_k`` (1-indexed position)."""
    out: Vector = {}
    for mono, c in x.items():
        if not 1 <= k < len(mono):
            raise ValueError("position out of range")
        head, tail = mono[:k - 1], mono[k + 1:]
        for (a, b), d in _pair_T(mono[k - 1], mono[k], n):
            add_into(out, head + (a, b) + tail, c * d)
    return out


def hecke_X(j: int, exponent: int, x: Vector, n: int) -> Vector:
    """Right action of ``X_j^exponent``: slot ``j`` moves by ``-n*exponent``."""
    out: Vector = {}
    for mono, c in x.items():
        if not 1 <= j <= len(mono):
            raise ValueError("position out of range")
        m = list(mono)
        m[j - 1] -= n * exponent
        add_into(out, tuple(m), c)
    return out


def is_strictly_decreasing(mono: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(mono, mono[1:]))


# brute-force quotient oracle

def _block_monomials(D: int, lo: int, hi: int, total: int) -> List[Monomial]:
    out = []

    def rec(prefix, left, k):
        if k == 1:
            if lo <= left <= hi:
                out.append(prefix + (left,))
            return
        for a in range(lo, hi + 1):
            rest = left - a
            if (k - 1) * lo <= rest <= (k - 1) * hi:
                rec(prefix + (a,), rest, k - 1)

    rec((), total, D)
    return out


@lru_cache(maxsize=None)
def _oracle_block(D: int, lo: int, hi: int, total: int, n: int) -> Dict[Monomial, Tuple[Tuple[Monomial, LaurentPoly], ...]]:
    monos = _block_monomials(D, lo, hi, total)
    rows = []
    for m in monos:
        for k in range(1, D):
            rel = vec_add({m: ONE}, hecke_T(k, {m: ONE}, n))
            for key in rel:
                if not all(lo <= a <= hi for a in key):
                    raise WindowTooSmall("relation leaves the window")
            if rel:
                rows.append(rel)
    basis = [m for m in monos if is_strictly_decreasing(m)]
    others = [m for m in monos if not is_strictly_decreasing(m)]
    # unit pivots keep the elimination inside the Laurent ring; the reduced
    # form does not depend on the pivot order once every non-basis monomial
    # is a pivot
    forms = {}
    reduced = linalg.rref_units(rows, others + basis, set(others))
    if reduced is not None:
        for p, row in reduced.items():
            forms[p] = tuple(sorted((b, -c) for b, c in row.items() if b != p))
    else:
        field_rows = [{key: linalg.to_field(c) for key, c in r.items()} for r in rows]
        red, piv = linalg.rref(field_rows, others + basis)
        basis_set = set(basis)
        for row, p in zip(red, piv):
            if p in basis_set:
                raise ArithmeticError("strictly decreasing monomials became dependent")
            forms[p] = tuple(sorted((b, linalg.from_field(-c)) for b, c in row.items() if b != p))
    missing = [m for m in others if m not in forms]
    if missing:
        raise WindowTooSmall(f"window [{lo},{hi}] too small to reduce {missing[0]}")
    return forms


def default_window(x: Vector, n: int) -> Tuple[int, int]:
    idx = [a for m in x for a in m]
    if not idx:
        return (0, 0)
    return (min(idx) - 2 * n, max(idx) + 2 * n)


def omega_normal_form_oracle(x: Vector, D: int, window: Optional[Tuple[int, int]], n: int) -> Vector:
    """Class of ``x`` in ``Lambda^D`` by row reduction inside ``window``."""
    if window is None:
        window = default_window(x, n)
    lo, hi = window
    out: Vector = {}
    for mono, c in x.items():
        if len(mono) != D:
            raise ValueError("monomial length differs from D")
        if not all(lo <= a <= hi for a in mono):
            raise WindowTooSmall("monomial outside the window")
        if is_strictly_decreasing(mono):
            add_into(out, mono, c)
            continue
        forms = _oracle_block(D, lo, hi, sum(mono), n)
        for b, d in forms[mono]:
            add_into(out, b, c * d)
    return out


# fast straightening

@lru_cache(maxsize=None)
def _synth_rule(res: int, gap: int, n: int) -> Tuple[Tuple[Tuple[int, int], LaurentPoly], ...]:
    l, m = res, res + gap
    forms = omega_normal_form_oracle({(l, m): ONE}, 2, (l - 2 * n, m + 2 * n), n)
    for (a, b) in forms:
        # each output pair is ordered and nested inside [l, m]
        assert a > b and l <= b and a <= m, (l, m, a, b)
    return tuple(sorted(forms.items()))


def two_letter_rule(l: int, m: int, n: int) -> Tuple[Tuple[Tuple[int, int], LaurentPoly], ...]:
    """Normal form of ``x_l ^ x_m`` for ``l <= m``, shifted from a base rule."""
    if l > m:
        return (((l, m), ONE),)
    if l == m:
        return ()
    res = l % n
    s = l - res
    return tuple(((a + s, b + s), c) for (a, b), c in _synth_rule(res, m - l, n))


@lru_cache(maxsize=None)
def _insert_base(word: Monomial, x: int, n: int) -> Tuple[Tuple[Monomial, LaurentPoly], ...]:
    if not word or word[-1] > x:
        return ((word + (x,), ONE),)
    if word[-1] == x:
        return ()
    out: Vector = {}
    for (a, b), c in two_letter_rule(word[-1], x, n):
        for w1, c1 in _insert(word[:-1], a, n):
            for w2, c2 in _insert(w1, b, n):
                add_into(out, w2, c * c1 * c2)
    return tuple(out.items())


def _insert(word: Monomial, x: int, n: int):
    # translation by multiples of n commutes with the relations
    s = x - x % n
    if s:
        res = _insert_base(tuple(a - s for a in word), x - s, n)
        return [(tuple(a + s for a in w), c) for w, c in res]
    return _insert_base(word, x, n)


def normal_order(word: Sequence[int], n: int) -> Vector:
    """Straighten the raw wedge word ``x_{w_1} ^ ... ^ x_{w_D}``."""
    cur: Vector = {(): ONE}
    for x in word:
        nxt: Vector = {}
        for w, c in cur.items():
            for w2, c2 in _insert(w, x, n):
                add_into(nxt, w2, c * c2)
        cur = nxt
        if not cur:
            break
    return cur


def normal_order_vector(x: Vector, n: int) -> Vector:
    out: Vector = {}
    for w, c in x.items():
        if is_strictly_decreasing(w):
            add_into(out, w, c)
            continue
        for w2, c2 in normal_order(w, n).items():
            add_into(out, w2, c * c2)
    return out


def normal_order_random(word: Sequence[int], n: int, rng: random.Random, max_steps: int = 100000) -> Vector:
    """Same quotient class, rewriting at randomly chosen disordered positions."""
    cur: Vector = {tuple(word): ONE}
    for _ in range(max_steps):
        bad = [w for w in cur if not is_strictly_decreasing(w)]
        if not bad:
            return cur
        w = rng.choice(sorted(bad))
        c = cur.pop(w)
        spots = [k for k in range(len(w) - 1) if w[k] <= w[k + 1]]
        k = rng.choice(spots)
        for (a, b), d in two_letter_rule(w[k], w[k + 1], n):
            add_into(cur, w[:k] + (a, b) + w[k + 2:], c * d)
    raise RuntimeError("random straightening did not terminate")


# semi-infinite encoding

def embed(lam: Sequence[int], D: int) -> Monomial:
    lam = tuple(lam)
    if D < len(lam):
        raise ValueError("truncation shorter than the partition")
    lam = lam + (0,) * (D - len(lam))
    return tuple(lam[k] - k for k in range(D))


def project(w: Sequence[int]) -> Optional[Partition]:
    D = len(w)
    if not is_strictly_decreasing(w):
        return None
    if D and w[-1] < 1 - D:
        return None
    return Partition(a + k for k, a in enumerate(w))


@dataclass(frozen=True)
class SemiInfiniteWedge:
    partition: Partition
    D: int

    def indices(self, D: Optional[int] = None) -> Monomial:
        return embed(self.partition, self.D if D is None else max(D, self.D))


def project_vector(x: Vector) -> Optional[Dict[Partition, LaurentPoly]]:
    out: Dict[Partition, LaurentPoly] = {}
    for w, c in x.items():
        lam = project(w)
        if lam is None:
            return None
        out[lam] = out.get(lam, ZERO) + c
    return {k: c for k, c in out.items() if c}


WordOp = Callable[[Monomial, int], Vector]


def stabilization_check(op: WordOp, lam: Sequence[int], D: int, n: int) -> bool:
    """Does ``op`` give the same projected result at truncations ``D`` and ``D+n``?"""
    r1 = project_vector(op(embed(lam, D), D))
    r2 = project_vector(op(embed(lam, D + n), D + n))
    return r1 is not None and r1 == r2


TRUNCATION_CAP = 64


def stable_apply(op: WordOp, lam: Sequence[int], n: int, start: int, cap: Optional[int] = None) -> Dict[Partition, LaurentPoly]:
    """Apply ``op`` at a truncation where two consecutive checks agree."""
    if cap is None:
        cap = TRUNCATION_CAP
    D = max(start, len(lam), 1)
    while D <= cap:
        r = [project_vector(op(embed(lam, d), d)) for d in (D, D + n, D + 2 * n)]
        if r[0] is not None and r[0] == r[1] == r[2]:
            return r[0]
        D *= 2
    raise RuntimeError(f"no stable truncation up to {cap} for {tuple(lam)}")
