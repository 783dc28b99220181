"""The level one Fock space and the operators acting on it.

Vectors are finite sums of partitions with Laurent polynomial coefficients.
Every operator is first defined on basis vectors ``|lam>`` and memoized; most
of them are computed on the truncated wedge ``Lambda^D`` and accepted once
three consecutive truncations ``D, D+n, D+2n`` agree.

Conventions:

* ``f_i`` adds a box of residue ``i`` with weight ``v^(A - R)`` where ``A``
  and ``R`` count addable and removable ``i``-boxes strictly above it;
* ``e_i`` removes a box with weight ``v^(R - A)`` counted strictly below;
* ``k_i`` acts by ``v^(A - R)`` over all ``i``-boxes;
* ``[l] = (v^l - v^-l)/(v - v^-1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import lru_cache, reduce
from math import lcm
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .combinatorics import (
    Partition,
    addable_cells,
    content,
    dominance_leq,
    is_n_regular,
    n_stretch,
    partitions_of,
    regular_periodic_split,
    removable_cells,
)
from .laurent import ONE, ZERO, LaurentPoly, quantum_factorial, quantum_integer, v_power
from .symfunc import schur_in_power_sums
from . import wedge


class FockVector:
    """Finite sum ``sum c_lam |lam>``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Sequence[int], LaurentPoly]] = None):
        self.terms: Dict[Partition, LaurentPoly] = {}
        for lam, c in (terms or {}).items():
            if isinstance(c, int):
                c = LaurentPoly(c)
            if c:
                lam = Partition(lam)
                s = self.terms.get(lam, ZERO) + c
                if s:
                    self.terms[lam] = s
                else:
                    self.terms.pop(lam, None)

    @classmethod
    def basis(cls, lam: Sequence[int] = ()) -> "FockVector":
        return cls({Partition(lam): ONE})

    def __getitem__(self, lam) -> LaurentPoly:
        return self.terms.get(Partition(lam), ZERO)

    def items(self):
        return sorted(self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FockVector._trusted(out)

    def __neg__(self):
        return FockVector._trusted({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "FockVector":
        if isinstance(c, int):
            c = LaurentPoly(c)
        return FockVector._trusted({k: a * c for k, a in self.terms.items() if a * c})

    def bar_coefficients(self) -> "FockVector":
        return FockVector._trusted({k: c.bar() for k, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"({c})|{','.join(map(str, k))}>" for k, c in self.items())
        return body or "0"

    @classmethod
    def _trusted(cls, d):
        x = object.__new__(cls)
        x.terms = d
        return x

    def in_lattice(self) -> bool:
        """Coefficients in ``Z[v]``."""
        return all(c.min_degree() >= 0 for c in self.terms.values())

    def mod_v(self) -> Dict[Partition, int]:
        if not self.in_lattice():
            raise ValueError("vector is not in the lattice")
        return {k: c[0] for k, c in self.terms.items() if c[0]}

    def degrees(self):
        return {sum(k) for k in self.terms}


BasisOp = Callable[[Partition], Mapping[Partition, LaurentPoly]]


def apply_basis_op(op: BasisOp, x: FockVector) -> FockVector:
    out: Dict[Partition, LaurentPoly] = {}
    for lam, c in x.terms.items():
        for mu, d in op(lam).items():
            s = out.get(mu, ZERO) + c * d
            if s:
                out[mu] = s
            else:
                out.pop(mu, None)
    return FockVector._trusted(out)


def basis_op_matrix(op: BasisOp, lam: Partition) -> Dict[Partition, LaurentPoly]:
    return dict(op(lam))


# Chevalley generators

def _word_member(word: Sequence[int], a: int) -> bool:
    # membership in the semi-infinite word whose tail continues below
    D = len(word)
    return a <= -D or a in word


def _sl_inf_k_exponent(word: Sequence[int], r: int) -> int:
    """``k_r`` for the infinite quiver: addable minus removable box of content r."""
    return int(_word_member(word, r) and not _word_member(word, r + 1)) - int(
        _word_member(word, r + 1) and not _word_member(word, r))


def _f_word(i: int, n: int):
    def op(word, D):
        out: wedge.Vector = {}
        e = 0
        for p, a in enumerate(word):
            if a % n == i:
                new = word[:p] + (a + 1,) + word[p + 1:]
                for w, c in wedge.normal_order(new, n).items():
                    wedge.add_into(out, w, c.shift(e))
            e += int(a % n == i) - int(a % n == (i + 1) % n)
        return out
    return op


def _e_word(i: int, n: int):
    def op(word, D):
        out: wedge.Vector = {}
        for p, a in enumerate(word):
            if a % n != (i + 1) % n:
                continue
            j = a - 1
            if _word_member(word, j):
                continue
            e = -sum(_sl_inf_k_exponent(word, r) for r in range(-D - n, j) if r % n == i % n)
            new = word[:p] + (j,) + word[p + 1:]
            for w, c in wedge.normal_order(new, n).items():
                wedge.add_into(out, w, c.shift(e))
        return out
    return op


@lru_cache(maxsize=None)
def _f_basis(i: int, n: int, lam: Partition):
    return wedge.stable_apply(_f_word(i, n), lam, n, len(lam) + 1)


@lru_cache(maxsize=None)
def _e_basis(i: int, n: int, lam: Partition):
    return wedge.stable_apply(_e_word(i, n), lam, n, len(lam) + 1)


def f_action(i: int, x: FockVector, n: int) -> FockVector:
    return apply_basis_op(lambda lam: _f_basis(i % n, n, lam), x)


def e_action(i: int, x: FockVector, n: int) -> FockVector:
    return apply_basis_op(lambda lam: _e_basis(i % n, n, lam), x)


def k_exponent(alpha: Sequence[int], lam: Sequence[int], n: int) -> int:
    """``k_alpha |lam> = v^(this) |lam>``."""
    out = 0
    for i, a in enumerate(alpha):
        if a:
            add = sum(1 for c in addable_cells(lam) if content(c) % n == i)
            rem = sum(1 for c in removable_cells(lam) if content(c) % n == i)
            out += a * (add - rem)
    return out


def k_action(alpha: Sequence[int], x: FockVector, n: int) -> FockVector:
    return FockVector._trusted({lam: c.shift(k_exponent(alpha, lam, n)) for lam, c in x.terms.items()})


def f_divided(i: int, l: int, x: FockVector, n: int) -> FockVector:
    if l < 1:
        raise ValueError("divided power needs l >= 1")
    y = x
    for _ in range(l):
        y = f_action(i, y, n)
    fact = quantum_factorial(l)
    return FockVector._trusted({k: c.divexact(fact) for k, c in y.terms.items()})


def e_divided(i: int, l: int, x: FockVector, n: int) -> FockVector:
    y = x
    for _ in range(l):
        y = e_action(i, y, n)
    fact = quantum_factorial(l)
    return FockVector._trusted({k: c.divexact(fact) for k, c in y.terms.items()})


# explicit combinatorial formulas, kept as independent oracles

def f_action_formula(i: int, lam: Sequence[int], n: int) -> FockVector:
    out = {}
    add = [c for c in addable_cells(lam) if content(c) % n == i % n]
    rem = [c for c in removable_cells(lam) if content(c) % n == i % n]
    for b in add:
        e = sum(1 for c in add if c[0] < b[0]) - sum(1 for c in rem if c[0] < b[0])
        mu = list(lam) + [0]
        mu[b[0] - 1] += 1
        out[Partition(mu)] = v_power(e)
    return FockVector(out)


def e_action_formula(i: int, lam: Sequence[int], n: int) -> FockVector:
    out = {}
    add = [c for c in addable_cells(lam) if content(c) % n == i % n]
    rem = [c for c in removable_cells(lam) if content(c) % n == i % n]
    for b in rem:
        e = sum(1 for c in rem if c[0] > b[0]) - sum(1 for c in add if c[0] > b[0])
        mu = list(lam)
        mu[b[0] - 1] -= 1
        out[Partition(mu)] = v_power(e)
    return FockVector(out)


# f_{ks} through the infinite quiver

def _h(d: Sequence[int], n: int) -> int:
    """``sum_{i<j, i = j mod n} d_i (d_{j+1} - d_j)`` for a 0/1 set of contents."""
    s = set(d)
    total = 0
    for i in s:
        for j in s | {c - 1 for c in s}:
            if j > i and (j - i) % n == 0:
                total += int(j + 1 in s) - int(j in s)
    return total


def _kdprime_exponent(d: Sequence[int], lam: Sequence[int], n: int) -> int:
    # k_{d'} = prod_{j in d} prod_{m > j, m = j mod n} k_m on |lam>
    out = 0
    relevant = {content(c) for c in addable_cells(lam)} | {content(c) for c in removable_cells(lam)}
    for j in d:
        for m in relevant:
            if m > j and (m - j) % n == 0:
                out += _sl_inf_k_exponent_partition(lam, m)
    return out


def _sl_inf_k_exponent_partition(lam: Sequence[int], r: int) -> int:
    return int(any(content(c) == r for c in addable_cells(lam))) - int(
        any(content(c) == r for c in removable_cells(lam)))


@lru_cache(maxsize=None)
def _f_trivial_basis(d: Tuple[int, ...], n: int, lam: Partition):
    out: Dict[Partition, LaurentPoly] = {}

    def rec(mu: Partition, below: Optional[int], need: Tuple[int, ...], used: Tuple[int, ...]):
        if not any(need):
            e = _h(used, n) + _kdprime_exponent(used, lam, n)
            out[mu] = out.get(mu, ZERO) + v_power(e)
            return
        for cell in addable_cells(mu):
            c = content(cell)
            if below is not None and c >= below:
                continue
            r = c % n
            if need[r]:
                nd = list(need)
                nd[r] -= 1
                nu = list(mu) + [0]
                nu[cell[0] - 1] += 1
                rec(Partition(nu), c, tuple(nd), used + (c,))

    rec(lam, None, tuple(d), ())
    return {k: c for k, c in out.items() if c}


def f_trivial_action(d: Sequence[int], x: FockVector, n: int) -> FockVector:
    """Action of ``f_d`` for the semisimple module of dimension ``d``.

    Sums over sets of contents with residue counts ``d``; each set is added
    one box at a time in decreasing content order.
    """
    d = tuple(d)
    if len(d) != n or any(a < 0 for a in d):
        raise ValueError("dimension vector must have n nonnegative entries")
    return apply_basis_op(lambda lam: _f_trivial_basis(d, n, lam), x)


# bosons and Schur operators

def _boson_word(k: int, n: int):
    def op(word, D):
        out: wedge.Vector = {}
        for p in range(len(word)):
            new = word[:p] + (word[p] + n * k,) + word[p + 1:]
            for w, c in wedge.normal_order(new, n).items():
                wedge.add_into(out, w, c)
        return out
    return op


@lru_cache(maxsize=None)
def _boson_basis(k: int, n: int, lam: Partition):
    return wedge.stable_apply(_boson_word(k, n), lam, n, len(lam) + n * k + 1)


def boson_p(k: int, x: FockVector, n: int) -> FockVector:
    if k < 1:
        raise ValueError("boson index must be positive")
    return apply_basis_op(lambda lam: _boson_basis(k, n, lam), x)


@lru_cache(maxsize=None)
def _power_product_basis(rho: Tuple[int, ...], n: int, lam: Partition):
    x = FockVector.basis(lam)
    for k in rho:
        x = boson_p(k, x, n)
    return x.terms


@lru_cache(maxsize=None)
def _schur_basis(mu: Tuple[int, ...], n: int, lam: Partition):
    expansion = schur_in_power_sums(mu).terms
    den = reduce(lcm, (c.denominator for c in expansion.values()), 1)
    acc: Dict[Partition, LaurentPoly] = {}
    for rho, c in expansion.items():
        w = int(c * den)
        for nu, d in _power_product_basis(tuple(rho), n, lam).items():
            acc[nu] = acc.get(nu, ZERO) + d * w
    out = {}
    for nu, c in acc.items():
        q = {}
        for e, a in c.items():
            if a % den:
                raise ArithmeticError("Schur operator produced non-integral coefficients")
            q[e] = a // den
        if q:
            out[nu] = LaurentPoly(q)
    return out


def schur_operator(mu: Sequence[int], x: FockVector, n: int) -> FockVector:
    """Action of ``a_mu``: the Schur function ``s_mu`` evaluated on the bosons."""
    mu = tuple(Partition(mu))
    return apply_basis_op(lambda lam: _schur_basis(mu, n, lam), x)


# monomial Hall basis elements f_m acting through the iterated coproduct

FM_MAX_DIM = 5

CoproductProvider = Callable[[object, object, object], LaurentPoly]


def _segment(start: int, length: int, n: int):
    from .combinatorics import Multisegment
    return Multisegment(n, {(start % n, length): 1})


def _fm_word(m, n: int, coproduct: CoproductProvider):
    from .combinatorics import multisegments_of_dim, vsub

    def k_exp(alpha, a):
        return alpha[a % n] - alpha[(a - 1) % n]

    def op(word, D):
        out: wedge.Vector = {}

        # slot p carries f_s k_{dim rest}: s a single segment starting at the
        # residue of its letter (or nothing), rest the part left for later slots
        def rec(p, rest, letters, coeff):
            if rest.is_empty():
                new = tuple(letters) + tuple(word[p:])
                for w, c in wedge.normal_order(new, n).items():
                    wedge.add_into(out, w, c * coeff)
                return
            if p == len(word):
                return
            a = word[p]
            alpha = rest.dim()
            rec(p + 1, rest, letters + [a], coeff.shift(k_exp(alpha, a)))
            for l in range(1, sum(alpha) + 1):
                s = _segment(a, l, n)
                sd = s.dim()
                if any(x > y for x, y in zip(sd, alpha)):
                    continue
                for m2 in multisegments_of_dim(vsub(alpha, sd)):
                    c = coproduct(rest, s, m2)
                    if c:
                        rec(p + 1, m2, letters + [a + l], coeff * c.shift(k_exp(m2.dim(), a)))

        rec(0, m, [], ONE)
        return out
    return op


@lru_cache(maxsize=None)
def _fm_basis(m, n: int, lam: Partition, coproduct: CoproductProvider):
    return wedge.stable_apply(_fm_word(m, n, coproduct), lam, n, len(lam) + sum(m.dim()) + 1)


def fm_action(m, x: FockVector, n: Optional[int] = None, coproduct: Optional[CoproductProvider] = None,
              max_dim: int = FM_MAX_DIM) -> FockVector:
    """Action of the Hall basis element ``f_m``.

    A single segment ``[i; l)`` moves the letter ``x_i`` to ``x_{i+l}``; a
    general ``f_m`` acts through the iterated twisted coproduct, whose
    constants come from ``coproduct(m, m1, m2)`` (coefficient of
    ``f_m1 (x) f_m2`` in ``Delta(f_m)``).
    """
    from . import hall

    n = m.n if n is None else n
    if m.n != n:
        raise ValueError("multisegment and Fock space disagree on n")
    if sum(m.dim()) > max_dim:
        raise ValueError(f"f_m action refused: total dimension {sum(m.dim())} exceeds {max_dim}")
    coproduct = coproduct or hall.coproduct_constant
    return apply_basis_op(lambda lam: _fm_basis(m, n, lam, coproduct), x)


def hall_element_action(h, x: FockVector, n: int, coproduct: Optional[CoproductProvider] = None) -> FockVector:
    """Action of a Hall element whose coefficients are Laurent polynomials."""
    out = FockVector()
    for m, c in h.laurent_terms().items():
        out = out + fm_action(m, x, n, coproduct).scale(c)
    return out


# Schur elements of the center

@lru_cache(maxsize=None)
def center_schur_element(nu: Tuple[int, ...], n: int, probe: int = 2):
    """The element ``a_nu`` of the center ``R[|nu| s]`` whose action on the
    Fock space is the Schur operator ``s_nu`` of the bosons.

    Solved from the actions of a basis of ``R[|nu| s]`` on ``|lam>`` with
    ``|lam| <= probe``; raises if the solution is not unique.
    """
    from . import hall
    from .linalg import nullspace, to_field

    nu = Partition(nu)
    k = sum(nu)
    basis = hall.center_component(n, k)
    probes = [lam for N in range(probe + 1) for lam in partitions_of(N)]
    rows = []
    for lam in probes:
        x = FockVector.basis(lam)
        target = schur_operator(nu, x, n)
        acts = [hall_element_action(b, x, n) for b in basis]
        support = set(target.terms).union(*[a.terms for a in acts])
        for mu in sorted(support):
            row = {j: to_field(a[mu]) for j, a in enumerate(acts) if a[mu]}
            if target[mu]:
                row["rhs"] = -to_field(target[mu])
            if row:
                rows.append(row)
    sol = [v for v in nullspace(rows, list(range(len(basis))) + ["rhs"]) if v.get("rhs")]
    if len(sol) != 1 or len(nullspace(rows, list(range(len(basis))) + ["rhs"])) != 1:
        raise ArithmeticError(f"Schur element for {tuple(nu)} is not determined by the probes")
    vec = sol[0]
    scale = 1 / vec["rhs"]
    out = hall.HallElement()
    for j, b in enumerate(basis):
        c = vec.get(j)
        if c:
            out = out + b.scale(c * scale)
    return out


def schur_leading_check(nu: Sequence[int], n: int) -> bool:
    """``(-v)^{(n-1)|nu|} a_nu`` lies in ``f_{m(n nu)} + v L``."""
    from . import hall

    nu = Partition(nu)
    a = center_schur_element(tuple(nu), n)
    return hall.leading_term_check(a, hall.periodic_multisegment(nu, n), (n - 1) * sum(nu))


def schur_coproduct_check(nu: Sequence[int], n: int) -> bool:
    """``Delta(a_nu) = sum c^nu_{lam,mu} a_lam (x) a_mu`` on every split."""
    from . import hall
    from .combinatorics import s_vector, vscale
    from .linalg import K
    from .symfunc import littlewood_richardson

    nu = Partition(nu)
    k = sum(nu)
    a_nu = center_schur_element(tuple(nu), n)
    for j in range(1, k):
        lhs = hall.coproduct(a_nu, vscale(j, s_vector(n)), vscale(k - j, s_vector(n)), max_dim=n * k)
        rhs: Dict = {}
        for lam in partitions_of(j):
            for mu in partitions_of(k - j):
                c = littlewood_richardson(nu, lam, mu)
                if not c:
                    continue
                al, am = center_schur_element(tuple(lam), n), center_schur_element(tuple(mu), n)
                for m1, c1 in al.terms.items():
                    for m2, c2 in am.terms.items():
                        rhs[(m1, m2)] = rhs.get((m1, m2), K(0)) + c * c1 * c2
        rhs = {p: c for p, c in rhs.items() if c}
        if lhs != rhs:
            return False
    return True


# bar involution

@dataclass(frozen=True)
class BarNormalization:
    """``(-1)^(s1*kd + s2*kD) v^(a1*kd + a2*kD)`` with ``kd = sum d_i(d_i-1)/2``
    over residue counts and ``kD = D(D-1)/2``."""

    s1: int
    s2: int
    a1: int
    a2: int

    def factor(self, word: Sequence[int], n: int) -> LaurentPoly:
        counts = [0] * n
        for a in word:
            counts[a % n] += 1
        kd = sum(c * (c - 1) // 2 for c in counts)
        D = len(word)
        kD = D * (D - 1) // 2
        sign = -1 if (self.s1 * kd + self.s2 * kD) % 2 else 1
        return LaurentPoly.monomial(self.a1 * kd + self.a2 * kD, sign)


def bar_word(word: Sequence[int], n: int, norm: BarNormalization) -> wedge.Vector:
    c = norm.factor(word, n)
    return {w: d * c for w, d in wedge.normal_order(tuple(reversed(word)), n).items()}


def _bar_wedge_vector(x: wedge.Vector, n: int, norm: BarNormalization) -> wedge.Vector:
    out: wedge.Vector = {}
    for w, c in x.items():
        cb = c.bar()
        for w2, d in bar_word(w, n, norm).items():
            wedge.add_into(out, w2, cb * d)
    return out


def _candidate_ok(norm: BarNormalization, n: int) -> bool:
    rng = random.Random(7)
    # vacuum fixed at every truncation
    for D in range(1, 2 * n + 3):
        vac = wedge.embed((), D)
        if _bar_wedge_vector({vac: ONE}, n, norm) != {vac: ONE}:
            return False
    words = [tuple(sorted(rng.sample(range(-4, 5), D), reverse=True)) for D in (2, 3, 3, 4) for _ in range(3)]
    for w in words:
        x = {w: ONE}
        if _bar_wedge_vector(_bar_wedge_vector(x, n, norm), n, norm) != x:
            return False
        for i in range(n):
            fi = _f_word(i, n)
            lhs = _bar_wedge_vector(fi(w, len(w)), n, norm)
            rhs: wedge.Vector = {}
            for w2, c in _bar_wedge_vector(x, n, norm).items():
                for w3, d in fi(w2, len(w2)).items():
                    wedge.add_into(rhs, w3, c * d)
            if lhs != rhs:
                return False
    return True


@lru_cache(maxsize=None)
def synthesize_bar_normalization(n: int) -> BarNormalization:
    """Search the small family of normalizations for the unique one that fixes
    the vacuum, squares to the identity and commutes with every ``f_i``."""
    hits = []
    for s1 in (0, 1):
        for s2 in (0, 1):
            for a1 in range(-2, 3):
                for a2 in range(-2, 3):
                    norm = BarNormalization(s1, s2, a1, a2)
                    if _candidate_ok(norm, n):
                        hits.append(norm)
    if len(hits) != 1:
        raise RuntimeError(f"bar normalization not unique for n={n}: {hits}")
    return hits[0]


def _bar_word_op(n: int):
    norm = synthesize_bar_normalization(n)

    def op(word, D):
        return bar_word(word, n, norm)
    return op


@lru_cache(maxsize=None)
def _bar_basis(n: int, lam: Partition):
    try:
        return wedge.stable_apply(_bar_word_op(n), lam, n, len(lam) + 1)
    except RuntimeError as exc:
        raise RuntimeError(f"bar involution did not stabilize: {exc}") from exc


def bar_involution(x: FockVector, n: int) -> FockVector:
    return apply_basis_op(lambda lam: _bar_basis(n, lam), x.bar_coefficients())


# canonical bases

def bar_matrix(n: int, N: int) -> Dict[Partition, Dict[Partition, LaurentPoly]]:
    """Columns ``bar(|lam>)`` for every partition of ``N``."""
    return {lam: dict(_bar_basis(n, lam)) for lam in partitions_of(N)}


@lru_cache(maxsize=None)
def dominance_direction(n: int, cap: int = 8) -> str:
    """``"down"`` if ``bar(|lam>) - |lam>`` only involves partitions dominated
    by ``lam``, ``"up"`` for the reverse.  Decided at the first size where the
    bar matrix is not diagonal."""
    for N in range(2, cap + 1):
        down = up = True
        for lam, col in bar_matrix(n, N).items():
            if col.get(lam) != ONE:
                raise RuntimeError("ordering direction wrong: bar matrix diagonal is not one")
            for mu in col:
                if mu == lam:
                    continue
                if not dominance_leq(mu, lam):
                    down = False
                if not dominance_leq(lam, mu):
                    up = False
        if not down and not up:
            raise RuntimeError("ordering direction wrong: bar matrix not triangular for dominance")
        if down != up:
            return "down" if down else "up"
    raise RuntimeError("bar matrix diagonal up to the cap; direction undecided")


def default_extension(N: int, direction: str) -> List[Partition]:
    """Linear extension in which bar only moves toward later partitions."""
    order = list(partitions_of(N))  # (N) first: a decreasing dominance extension
    return order if direction == "down" else order[::-1]


def random_extension(N: int, direction: str, rng: random.Random) -> List[Partition]:
    parts = list(partitions_of(N))
    remaining = set(parts)
    out = []
    while remaining:
        if direction == "down":
            ready = [p for p in remaining if not any(q != p and dominance_leq(p, q) for q in remaining)]
        else:
            ready = [p for p in remaining if not any(q != p and dominance_leq(q, p) for q in remaining)]
        p = rng.choice(sorted(ready))
        out.append(p)
        remaining.remove(p)
    return out


@dataclass
class CanonicalBasisTable:
    n: int
    N: int
    sign: str
    order: List[Partition]
    direction: str
    vectors: Dict[Partition, Dict[Partition, LaurentPoly]] = dc_field(default_factory=dict)

    def vector(self, lam) -> FockVector:
        return FockVector(self.vectors[Partition(lam)])

    def entry(self, mu, lam) -> LaurentPoly:
        return self.vectors[Partition(lam)].get(Partition(mu), ZERO)

    def is_positive(self) -> bool:
        return all(all(a >= 0 for _, a in c.items()) for col in self.vectors.values() for c in col.values())


def _split_part(r: LaurentPoly, sign: str) -> LaurentPoly:
    if r[0]:
        raise ArithmeticError("elimination residue has a constant term")
    if r.bar() != -r:
        raise ArithmeticError("elimination residue is not bar-antisymmetric")
    if sign == "+":
        return LaurentPoly({e: c for e, c in r.items() if e > 0})
    return LaurentPoly({e: c for e, c in r.items() if e < 0})


def triangular_completion(seed: Mapping[Partition, int], M, order: Sequence[Partition], sign: str = "+") -> Dict[Partition, LaurentPoly]:
    """Unique bar-invariant vector with constant parts ``seed`` (integers)
    and correction terms in ``vZ[v]`` (``+``) or ``v^-1 Z[v^-1]`` (``-``)."""
    coeffs: Dict[Partition, LaurentPoly] = {}
    for mu in order:
        r = ZERO
        for nu, c in coeffs.items():
            a = M[nu].get(mu)
            if a is not None and nu != mu:
                r = r + c.bar() * a
        const = LaurentPoly(seed.get(mu, 0))
        # c - bar(c) = r with c = const + correction
        c = const + _split_part(r, sign)
        if c:
            coeffs[mu] = c
    return coeffs


def canonical_basis(n: int, N: int, sign: str = "+", order: Optional[Sequence[Partition]] = None,
                    max_size: int = 8) -> CanonicalBasisTable:
    if N > max_size:
        raise ValueError(f"N={N} exceeds the configured bound {max_size}")
    if sign not in "+-" or len(sign) != 1:
        raise ValueError("sign must be '+' or '-'")
    direction = dominance_direction(n)
    M = bar_matrix(n, N)
    order = list(order) if order is not None else default_extension(N, direction)
    pos = {p: k for k, p in enumerate(order)}
    for lam, col in M.items():
        if col.get(lam) != ONE or any(pos[mu] < pos[lam] for mu in col):
            raise RuntimeError("ordering direction wrong")
    table = CanonicalBasisTable(n, N, sign, order, direction)
    for lam in order:
        table.vectors[lam] = triangular_completion({lam: 1}, M, order[pos[lam]:], sign)
    return table


def is_bar_invariant(x: FockVector, n: int) -> bool:
    return bar_involution(x, n) == x


# crystal operators

def _i_block(i: int, lam: Partition, n: int) -> List[Partition]:
    seen = {lam}
    stack = [lam]
    while stack:
        mu = stack.pop()
        for nu in list(f_action_formula(i, mu, n).terms) + list(e_action_formula(i, mu, n).terms):
            if nu not in seen:
                seen.add(nu)
                stack.append(nu)
    return sorted(seen)


def _field_apply(op, x: Dict[Partition, object]) -> Dict[Partition, object]:
    from . import linalg
    out: Dict[Partition, object] = {}
    for lam, c in x.items():
        for mu, d in op(lam).items():
            out[mu] = out.get(mu, 0) + c * linalg.to_field(d)
    return {k: c for k, c in out.items() if c}


def _qint_field(l: int):
    from . import linalg
    return linalg.to_field(quantum_integer(l))


def _qfact_field(l: int):
    from . import linalg
    return linalg.to_field(quantum_factorial(l))


def _qbinom_field(m: int, t: int):
    out = _qfact_field(m) / (_qfact_field(t) * _qfact_field(m - t))
    return out


def string_decomposition(i: int, lam: Partition, n: int) -> List[Tuple[int, Dict[Partition, object]]]:
    """``|lam> = sum_t f_i^(t) u_t`` with each ``u_t`` killed by ``e_i``."""
    fop = lambda mu: _f_basis(i, n, mu)
    eop = lambda mu: _e_basis(i, n, mu)
    alpha = tuple(1 if j == i else 0 for j in range(n))
    from . import linalg
    y: Dict[Partition, object] = {lam: linalg.K(1)}
    w = k_exponent(alpha, lam, n)
    parts = []
    while y:
        powers = [y]
        while True:
            z = _field_apply(eop, powers[-1])
            if not z:
                break
            powers.append(z)
        t = len(powers) - 1
        m = w + 2 * t
        u = {k: c / (_qfact_field(t) * _qbinom_field(m, t)) for k, c in powers[t].items()}
        fu = u
        for _ in range(t):
            fu = _field_apply(fop, fu)
        fu = {k: c / _qfact_field(t) for k, c in fu.items()}
        for k, c in fu.items():
            y[k] = y.get(k, 0) - c
        y = {k: c for k, c in y.items() if c}
        parts.append((t, u))
    return parts


def _mod_v_class(x: Dict[Partition, object]) -> Optional[Partition]:
    out = []
    for k, c in x.items():
        num, den = c.numer, c.denom
        dterms = dict(den.terms())
        nterms = dict(num.terms())
        dlow = min(m[0] for m in dterms)
        nlow = min(m[0] for m in nterms)
        if nlow < dlow:
            raise ArithmeticError("crystal image leaves the lattice")
        if nlow == dlow:
            val = nterms[(nlow,)] / dterms[(dlow,)]
            out.append((k, val))
    if not out:
        return None
    if len(out) != 1 or out[0][1] != 1:
        raise ArithmeticError(f"mod v image is not a single basis class: {out}")
    return out[0][0]


def crystal_f(i: int, lam: Sequence[int], n: int) -> Optional[Partition]:
    i %= n
    lam = Partition(lam)
    fop = lambda mu: _f_basis(i, n, mu)
    out: Dict[Partition, object] = {}
    for t, u in string_decomposition(i, lam, n):
        fu = u
        for _ in range(t + 1):
            fu = _field_apply(fop, fu)
        for k, c in fu.items():
            out[k] = out.get(k, 0) + c / _qfact_field(t + 1)
    return _mod_v_class({k: c for k, c in out.items() if c})


def crystal_e(i: int, lam: Sequence[int], n: int) -> Optional[Partition]:
    i %= n
    lam = Partition(lam)
    fop = lambda mu: _f_basis(i, n, mu)
    out: Dict[Partition, object] = {}
    for t, u in string_decomposition(i, lam, n):
        if t == 0:
            continue
        fu = u
        for _ in range(t - 1):
            fu = _field_apply(fop, fu)
        for k, c in fu.items():
            out[k] = out.get(k, 0) + c / _qfact_field(t - 1)
    return _mod_v_class({k: c for k, c in out.items() if c})


def _signature(i: int, lam: Sequence[int], n: int):
    nodes = [(content(c), "+", c) for c in addable_cells(lam) if content(c) % n == i % n]
    nodes += [(content(c), "-", c) for c in removable_cells(lam) if content(c) % n == i % n]
    # read by increasing content, cancel adjacent "-+" pairs
    nodes.sort()
    stack: List[Tuple[int, str, Tuple[int, int]]] = []
    for node in nodes:
        if stack and stack[-1][1] == "-" and node[1] == "+":
            stack.pop()
        else:
            stack.append(node)
    return stack


def crystal_f_signature(i: int, lam: Sequence[int], n: int) -> Optional[Partition]:
    """Signature rule: reduced word is ``+...+-...-``; add the highest free ``+``."""
    plus = [c for _, s, c in _signature(i, lam, n) if s == "+"]
    if not plus:
        return None
    cell = plus[-1]
    mu = list(lam) + [0]
    mu[cell[0] - 1] += 1
    return Partition(mu)


def crystal_e_signature(i: int, lam: Sequence[int], n: int) -> Optional[Partition]:
    minus = [c for _, s, c in _signature(i, lam, n) if s == "-"]
    if not minus:
        return None
    cell = minus[0]
    mu = list(lam)
    mu[cell[0] - 1] -= 1
    return Partition(mu)


# global basis of the highest weight module through divided powers

def ladder_sequence(lam: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """``(residue, count)`` per ladder, in increasing ladder order."""
    ladders: Dict[int, List[int]] = {}
    for r, c in Partition(lam).cells():
        L = (r - 1) + (n - 1) * (c - 1)
        ladders.setdefault(L, []).append((c - r) % n)
    out = []
    for L in sorted(ladders):
        res = set(ladders[L])
        assert len(res) == 1
        out.append((res.pop(), len(ladders[L])))
    return out


def ladder_monomial(lam: Sequence[int], n: int) -> FockVector:
    x = FockVector.basis(())
    for i, l in ladder_sequence(lam, n):
        x = f_divided(i, l, x, n)
    return x


def _bar_symmetric_part(c: LaurentPoly) -> LaurentPoly:
    """The bar-invariant ``g`` with ``c - g`` in ``vZ[v]``."""
    d = {}
    for e, a in c.items():
        if e < 0:
            d[e] = d.get(e, 0) + a
            d[-e] = d.get(-e, 0) + a
        elif e == 0:
            d[0] = d.get(0, 0) + a
    return LaurentPoly(d)


@lru_cache(maxsize=None)
def _global_basis_vector(lam: Partition, n: int) -> Tuple[Tuple[Partition, LaurentPoly], ...]:
    if not is_n_regular(lam, n):
        raise ValueError("global basis of the highest weight module is indexed by n-regular partitions")
    x = ladder_monomial(lam, n)
    if x[lam] != ONE:
        raise ArithmeticError("ladder monomial does not have leading coefficient one")
    order = default_extension(sum(lam), dominance_direction(n))
    for mu in order[order.index(lam) + 1:]:
        c = x[mu]
        if not c or c.min_degree() > 0:
            continue
        g = _bar_symmetric_part(c)
        if not is_n_regular(mu, n):
            raise ArithmeticError(f"non-lattice coefficient on a non-regular partition {mu}")
        x = x - FockVector(dict(_global_basis_vector(mu, n))).scale(g)
    return tuple(x.items())


def global_basis_vector(lam: Sequence[int], n: int) -> FockVector:
    """Bar-invariant element of ``U^-|0>`` congruent to ``|lam>`` mod ``vL``,
    built from divided powers without using the bar matrix."""
    return FockVector(dict(_global_basis_vector(Partition(lam), n)))


# lattice statements for the Schur operators

def lattice_shift(x: FockVector, lam: Sequence[int], e: int) -> bool:
    """Is ``x`` in ``(-v)^e (|lam> + vL)``?"""
    y = x.scale(LaurentPoly.monomial(-e, -1 if e % 2 else 1))
    if not y.in_lattice():
        return False
    return y.mod_v() == {Partition(lam): 1}


def observed_shift(x: FockVector, lam: Sequence[int], e: int) -> Optional[int]:
    """Which of ``+e``, ``-e`` (if any) makes ``lattice_shift`` true."""
    for s in (e, -e):
        if lattice_shift(x, lam, s):
            return s
    return None


def schur_lattice_bound(mu: Sequence[int], lam: Sequence[int], n: int) -> bool:
    x = schur_operator(mu, FockVector.basis(lam), n)
    return x.scale(v_power((n - 1) * sum(mu))).in_lattice()


def vacuum_schur_shift(mu: Sequence[int], n: int) -> Optional[int]:
    """Exponent ``e`` with ``a_mu|0> in (-v)^e (|n mu> + vL)``, or ``None``."""
    x = schur_operator(mu, FockVector.basis(()), n)
    return observed_shift(x, n_stretch(mu, n), (n - 1) * sum(mu))


def periodic_schur_shift(lam: Sequence[int], n: int) -> Optional[int]:
    reg, mu = regular_periodic_split(lam, n)
    x = schur_operator(mu, FockVector.basis(reg), n)
    return observed_shift(x, lam, (n - 1) * sum(mu))


@dataclass
class ChainReport:
    partition: Partition
    regular_part: Partition
    periodic_part: Partition
    in_lattice: bool
    congruent: bool
    bar_invariant: bool
    completion_matches: bool
    canonical_congruent: bool

    @property
    def ok(self) -> bool:
        return all((self.in_lattice, self.congruent, self.bar_invariant,
                    self.completion_matches, self.canonical_congruent))


def theorem_chain(lam: Sequence[int], n: int, table: Optional[CanonicalBasisTable] = None) -> ChainReport:
    """``(-v)^((n-1)|mu|) a_mu b+_{lam'}`` against ``|lam>`` and ``b+_lam``."""
    lam = Partition(lam)
    reg, mu = regular_periodic_split(lam, n)
    e = (n - 1) * sum(mu)
    base = global_basis_vector(reg, n)
    raw = schur_operator(mu, base, n)
    w = raw.scale(LaurentPoly.monomial(e, -1 if e % 2 else 1))
    in_lat = w.in_lattice()
    congruent = in_lat and w.mod_v() == {lam: 1}
    if table is None:
        table = canonical_basis(n, sum(lam))
    M = bar_matrix(n, sum(lam))
    order = table.order
    seed = w.mod_v() if in_lat else {}
    completion = triangular_completion(seed, M, order) if in_lat else {}
    b = table.vectors[lam]
    canon_cong = in_lat and (FockVector(b) - w).scale(v_power(-1)).in_lattice()
    return ChainReport(lam, reg, mu, in_lat, congruent, is_bar_invariant(raw, n),
                       completion == b, canon_cong)
