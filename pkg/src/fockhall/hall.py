"""Hall algebra of the cyclic quiver by brute-force counting over finite fields.

Structure constants in the basis ``f_m = q^{-dim O_m} 1_m`` are obtained by
counting over ``F_Q`` for several field sizes and interpolating in ``Q``,
then substituting ``Q = v^-2`` (``q = v^-1``).

* product: for ``x`` in ``O_m``, count ``x``-stable graded subspaces ``U``
  with ``x|U`` in ``O_{m'}`` (first factor) and ``x|V/U`` in ``O_{m''}``;
* coproduct: for fixed ``x'`` in ``O_{m'}`` on ``U`` and ``x''`` in
  ``O_{m''}`` on ``V/U``, count the block maps ``V/U -> U`` whose extension
  lies in ``O_m``.

The two counts are computed independently and tied together only by the
Green compatibility check.
"""

from __future__ import annotations

import json
import os
import tempfile
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .combinatorics import (
    DimVector,
    Multisegment,
    edge_sum,
    form_m,
    form_n,
    format_multisegment,
    multisegment_of_partition,
    multisegments_of_dim,
    n_stretch,
    parse_multisegment,
    partition_count,
    s_vector,
    sym_form,
    vadd,
    vscale,
    vsub,
)
from .finite_field import GF, field
from .laurent import ONE, LaurentPoly, interpolate, v_power
from .linalg import VF, K, from_field, is_laurent, nullspace, to_field

FIELD_SIZES = (2, 3, 4, 5, 7, 8, 9, 11, 13)
CACHE_VERSION = 1
DEFAULT_MAX_DIM = 5


class HallError(RuntimeError):
    """Counting or interpolation produced inconsistent data."""


class SizeLimitExceeded(ValueError):
    pass


def _check_size(total: int, max_dim: int):
    if total > max_dim:
        raise SizeLimitExceeded(f"total dimension {total} exceeds the configured bound {max_dim}")


# ---------------------------------------------------------------------------
# cache


class HallCache:
    """Per-field raw counts, stored as versioned JSON.

    Constants are re-interpolated from the stored counts on every use, so a
    corrupted entry surfaces as an interpolation error instead of a silently
    wrong constant.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self.entries: Dict[str, Dict[str, Dict[str, int]]] = {}
        self.dirty = False
        if path and os.path.exists(path):
            with open(path) as fh:
                data = json.load(fh)
            if data.get("version") == CACHE_VERSION:
                self.entries = data.get("entries", {})

    def get(self, key: str, q: int) -> Optional[Dict[str, int]]:
        return self.entries.get(key, {}).get(str(q))

    def put(self, key: str, q: int, counts: Dict[str, int]):
        self.entries.setdefault(key, {})[str(q)] = counts
        self.dirty = True

    def save(self):
        if not self.path or not self.dirty:
            return
        folder = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(folder, exist_ok=True)
        # write-then-rename keeps concurrent readers on a complete file
        fd, tmp = tempfile.mkstemp(dir=folder, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump({"version": CACHE_VERSION, "entries": self.entries}, fh, sort_keys=True)
        os.replace(tmp, self.path)
        self.dirty = False


_cache = HallCache()


def use_cache(path: Optional[str]) -> HallCache:
    """Switch the module-wide cache (``None`` for memory only)."""
    global _cache
    _cache = HallCache(path)
    return _cache


def current_cache() -> HallCache:
    return _cache


def set_field_sizes(sizes: Sequence[int]) -> Tuple[int, ...]:
    """Replace the ordered list of sample fields used for interpolation."""
    global FIELD_SIZES
    sizes = tuple(int(q) for q in sizes)
    if len(set(sizes)) != len(sizes) or not sizes:
        raise ValueError("field sizes must be distinct and nonempty")
    for q in sizes:
        field(q)  # rejects non prime powers
    FIELD_SIZES = sizes
    return FIELD_SIZES


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class JordanData:
    """``d[k-1][j] = dim Ker x^k|V_j - dim Ker x^(k-1)|V_j`` for ``k = 1..``."""

    n: int
    d: Tuple[Tuple[int, ...], ...]

    def entry(self, k: int, j: int) -> int:
        if k < 1 or k > len(self.d):
            return 0
        return self.d[k - 1][j % self.n]

    def to_multisegment(self) -> Multisegment:
        n, L = self.n, len(self.d)
        mult = {}
        for e in range(n):
            # N[k] = number of segments ending at e of length >= k
            N = [self.entry(k, e - k + 1) for k in range(1, L + 2)]
            for l in range(1, L + 1):
                c = N[l - 1] - N[l]
                if c < 0:
                    raise HallError("Jordan data is not monotone")
                if c:
                    mult[((e - l + 1) % n, l)] = c
        return Multisegment(n, mult)


def jordan_from_kernels(K_: Sequence[Sequence[int]], n: int) -> JordanData:
    """Jordan data from kernel dimensions ``K_[k][j]`` with ``K_[0] = 0``."""
    return JordanData(n, tuple(tuple(K_[k][j] - K_[k - 1][j] for j in range(n)) for k in range(1, len(K_))))


def jordan_data(m: Multisegment) -> JordanData:
    """Combinatorial Jordan data of ``m``: a segment contributes 1 to ``d^k_j``
    at each vertex ``j`` lying ``k-1`` steps before its end."""
    n = m.n
    L = max((l for (_, l), _ in m.items()), default=0)
    d = [[0] * n for _ in range(L)]
    for (i, l), a in m.items():
        for t in range(l):
            d[l - t - 1][(i + t) % n] += a
    return JordanData(n, tuple(tuple(r) for r in d))


class QuiverRep:
    """Nilpotent representation: ``maps[j]`` is the matrix of ``V_j -> V_{j+1}``
    as ``dim[j+1]`` rows of length ``dim[j]``."""

    def __init__(self, F: GF, dim: Sequence[int], maps: Sequence[Sequence[Sequence[int]]]):
        self.F = F
        self.n = len(dim)
        self.dim = tuple(dim)
        self.maps = [[list(r) for r in M] for M in maps]
        for j, M in enumerate(self.maps):
            if len(M) != self.dim[(j + 1) % self.n] or any(len(r) != self.dim[j] for r in M):
                raise ValueError(f"map {j} has the wrong shape")

    @classmethod
    def representative(cls, m: Multisegment, q: int) -> "QuiverRep":
        """Standard representative: each segment is a chain of basis vectors."""
        n = m.n
        dim = [0] * n
        index = []  # index[s][t] = local index of box t of segment s
        segs = m.segments()
        for i, l in segs:
            row = []
            for t in range(l):
                j = (i + t) % n
                row.append(dim[j])
                dim[j] += 1
            index.append(row)
        maps = [[[0] * dim[j] for _ in range(dim[(j + 1) % n])] for j in range(n)]
        for (i, l), row in zip(segs, index):
            for t in range(l - 1):
                j = (i + t) % n
                maps[j][row[t + 1]][row[t]] = 1
        return cls(field(q), dim, maps)

    def power(self, k: int, j: int) -> List[List[int]]:
        """Matrix of ``x^k : V_j -> V_{j+k}``."""
        n = self.n
        M = [[int(r == c) for c in range(self.dim[j])] for r in range(self.dim[j])]
        for t in range(k):
            src = (j + t) % n
            M = self.F.mat_mul(self.maps[src], M, self.dim[src]) if self.dim[src] else [
                [0] * self.dim[j] for _ in range(self.dim[(src + 1) % n])]
        return M

    def is_nilpotent(self) -> bool:
        total = sum(self.dim)
        return all(not any(any(r) for r in self.power(total * self.n, j)) for j in range(self.n) if self.dim[j])

    def jordan_data(self) -> JordanData:
        n = self.n
        if not self.is_nilpotent():
            raise ValueError("representation is not nilpotent")
        total = sum(self.dim)
        K_ = [[0] * n]
        k = 0
        while K_[-1] != list(self.dim):
            k += 1
            if k > total:
                raise HallError("kernel filtration does not terminate")
            K_.append([self.dim[j] - self.F.rank(self.power(k, j)) for j in range(n)])
        return jordan_from_kernels(K_, n)

    def direct_sum(self, other: "QuiverRep") -> "QuiverRep":
        n = self.n
        maps = []
        for j in range(n):
            t = (j + 1) % n
            A, B = self.maps[j], other.maps[j]
            rows = [list(r) + [0] * other.dim[j] for r in A] + [[0] * self.dim[j] + list(r) for r in B]
            if not rows:
                rows = []
            maps.append(rows)
            assert len(rows) == self.dim[t] + other.dim[t]
        return QuiverRep(self.F, vadd(self.dim, other.dim), maps)


def orbit_identify(x: QuiverRep) -> Multisegment:
    return x.jordan_data().to_multisegment()


def dim_orbit(m: Multisegment) -> int:
    """Closed formula ``sum_j sum_{k>i} (d^k_j + d^k_{j-1}) d^i_j``."""
    J = jordan_data(m)
    L = len(J.d)
    total = 0
    for j in range(m.n):
        for i in range(1, L + 1):
            for k in range(i + 1, L + 1):
                total += (J.entry(k, j) + J.entry(k, j - 1)) * J.entry(i, j)
    return total


@lru_cache(maxsize=None)
def dim_end(m: Multisegment) -> int:
    """``dim End(x)`` for ``x`` in ``O_m``, by solving ``A_{j+1} x_j = x_j A_j`` over Q."""
    from sympy import Matrix

    x = QuiverRep.representative(m, 2)
    n, d = x.n, x.dim
    var = {}
    for j in range(n):
        for r in range(d[j]):
            for c in range(d[j]):
                var[(j, r, c)] = len(var)
    if not var:
        return 0
    rows = []
    for j in range(n):
        t = (j + 1) % n
        X = x.maps[j]
        for r in range(d[t]):
            for c in range(d[j]):
                row = [0] * len(var)
                # (A_t X)[r][c] - (X A_j)[r][c]
                for s in range(d[t]):
                    if X[s][c]:
                        row[var[(t, r, s)]] += X[s][c]
                for s in range(d[j]):
                    if X[r][s]:
                        row[var[(j, s, c)]] -= X[r][s]
                rows.append(row)
    if not rows:
        return len(var)
    return len(var) - Matrix(rows).rank()


def dim_aut(m: Multisegment) -> int:
    return dim_end(m)


def aut_polynomial(m: Multisegment) -> LaurentPoly:
    """``|Aut(m)|`` over ``F_Q`` as a polynomial in ``Q = v^-2``.

    ``End`` is ``prod M_a(F)`` modulo its radical, with ``a`` running over the
    multiplicities of the indecomposable summands.
    """
    Q = v_power(-2)
    out = ONE
    for _, a in m.items():
        for k in range(a):
            out = out * (Q ** a - Q ** k)
    rad = dim_end(m) - sum(a * a for _, a in m.items())
    return out * Q ** rad


def aut_count_bruteforce(m: Multisegment, q: int) -> int:
    """Count ``g`` in ``prod GL(V_j)`` commuting with the representative."""
    x = QuiverRep.representative(m, q)
    F, n, d = x.F, x.n, x.dim

    def invertibles(k):
        out = []
        for entries in product(range(q), repeat=k * k):
            M = [list(entries[r * k:(r + 1) * k]) for r in range(k)]
            if F.rank(M) == k:
                out.append(M)
        return out or [[]]

    groups = [invertibles(d[j]) for j in range(n)]
    count = 0
    for gs in product(*groups):
        ok = True
        for j in range(n):
            t = (j + 1) % n
            if not d[j] or not d[t]:
                continue
            lhs = F.mat_mul(gs[t], x.maps[j], d[t])
            rhs = F.mat_mul(x.maps[j], gs[j], d[j])
            if lhs != rhs:
                ok = False
                break
        count += ok
    return count


def form_diagonal(m: Multisegment, exponent: str = "dimension"):
    """``<f_m, f_m> = v^{-2 dim Aut} (1 - v^2)^e / |Aut(m)|`` in Q(v).

    ``e`` is the total dimension of ``m`` by default; ``exponent="segments"``
    uses the number of segments instead, which is not Green compatible.
    """
    e = sum(m.dim()) if exponent == "dimension" else len(m)
    num = v_power(-2 * dim_aut(m)) * (ONE - v_power(2)) ** e
    return to_field(num) / to_field(aut_polynomial(m))


# ---------------------------------------------------------------------------
# counting


def _sample_fields(bound: int) -> List[int]:
    # one extra field beyond the degree bound, as a consistency check
    need = bound + 2
    if need > len(FIELD_SIZES):
        raise SizeLimitExceeded(f"degree bound {bound} needs more sample fields than available")
    return list(FIELD_SIZES[:need])


def _fit(counts: Dict[int, int], bound: int, what: str) -> LaurentPoly:
    if not any(counts.values()):
        return LaurentPoly()
    try:
        return interpolate(counts.items(), bound)
    except ValueError as err:
        raise HallError(f"interpolation failed for {what}: {err}") from err


def _product_key(m: Multisegment, a: DimVector) -> str:
    return f"product|n={m.n}|m={format_multisegment(m)}|a={','.join(map(str, a))}"


def _extension_key(sub: Multisegment, quot: Multisegment) -> str:
    return f"extension|n={sub.n}|sub={format_multisegment(sub)}|quot={format_multisegment(quot)}"


def _encode_pair(m1: Multisegment, m2: Multisegment) -> str:
    return f"{format_multisegment(m1)}|{format_multisegment(m2)}"


def _kernel_dims_sub_quot(F: GF, P, cols, d, a, U, n, L):
    Ksub = [[0] * n]
    Kquo = [[0] * n]
    for k in range(1, L + 1):
        ks, kq = [], []
        for j in range(n):
            t = (j + k) % n
            img = [F.mat_vec(P[k][j], u) for u in U[j]]
            ks.append(a[j] - F.rank(img))
            full = F.rank(list(U[t]) + cols[k][j])
            kq.append(d[j] - (full - a[t]) - a[j])
        Ksub.append(ks)
        Kquo.append(kq)
    return Ksub, Kquo


def product_counts(m: Multisegment, a: Sequence[int], q: int) -> Dict[Tuple[Multisegment, Multisegment], int]:
    """For ``x`` in ``O_m`` over ``F_q``: ``(sub type, quotient type) -> #U``."""
    a = tuple(a)
    key = _product_key(m, a)
    hit = _cache.get(key, q)
    n = m.n
    if hit is not None:
        out = {}
        for s, c in hit.items():
            s1, s2 = s.split("|")
            out[(parse_multisegment(s1, n), parse_multisegment(s2, n))] = c
        return out
    x = QuiverRep.representative(m, q)
    F, d = x.F, x.dim
    if any(ai > di or ai < 0 for ai, di in zip(a, d)):
        raise ValueError("subspace dimension exceeds the ambient dimension")
    L = max((l for (_, l), _ in m.items()), default=0)
    P = {k: [x.power(k, j) for j in range(n)] for k in range(1, L + 1)}
    cols = {k: [[tuple(r[c] for r in P[k][j]) for c in range(d[j])] for j in range(n)] for k in P}
    counts: Counter = Counter()
    choices = [list(F.subspaces(a[j], d[j])) for j in range(n)]
    for U in product(*choices):
        stable = True
        for j in range(n):
            t = (j + 1) % n
            if not U[j] or not a[t] and not any(any(r) for r in x.maps[j]):
                continue
            img = [F.mat_vec(x.maps[j], u) for u in U[j]]
            if F.rank(list(U[t]) + img) != a[t]:
                stable = False
                break
        if not stable:
            continue
        Ksub, Kquo = _kernel_dims_sub_quot(F, P, cols, d, a, U, n, L)
        sub = jordan_from_kernels(Ksub, n).to_multisegment()
        quo = jordan_from_kernels(Kquo, n).to_multisegment()
        counts[(sub, quo)] += 1
    _cache.put(key, q, {_encode_pair(s1, s2): c for (s1, s2), c in sorted(counts.items(), key=lambda t: _encode_pair(*t[0]))})
    return dict(counts)


def extension_counts(sub: Multisegment, quot: Multisegment, q: int) -> Dict[Multisegment, int]:
    """Number of block maps ``z`` with ``[[x', z], [0, x'']]`` in ``O_m``, per ``m``."""
    if sub.n != quot.n:
        raise ValueError("multisegments for different n")
    key = _extension_key(sub, quot)
    n = sub.n
    hit = _cache.get(key, q)
    if hit is not None:
        return {parse_multisegment(s, n): c for s, c in hit.items()}
    x1 = QuiverRep.representative(sub, q)
    x2 = QuiverRep.representative(quot, q)
    F = x1.F
    a, b = x1.dim, x2.dim
    d = vadd(a, b)
    slots = [(j, r, c) for j in range(n) for r in range(a[(j + 1) % n]) for c in range(b[j])]
    counts: Counter = Counter()
    for vals in product(range(q), repeat=len(slots)):
        z = {s: val for s, val in zip(slots, vals)}
        maps = []
        for j in range(n):
            t = (j + 1) % n
            M = [[0] * d[j] for _ in range(d[t])]
            for r in range(a[t]):
                for c in range(a[j]):
                    M[r][c] = x1.maps[j][r][c]
                for c in range(b[j]):
                    M[r][a[j] + c] = z[(j, r, c)]
            for r in range(b[t]):
                for c in range(b[j]):
                    M[a[t] + r][a[j] + c] = x2.maps[j][r][c]
            maps.append(M)
        counts[orbit_identify(QuiverRep(F, d, maps))] += 1
    _cache.put(key, q, {format_multisegment(m): c for m, c in sorted(counts.items())})
    return dict(counts)


def product_constant(m1: Multisegment, m2: Multisegment, m: Multisegment) -> LaurentPoly:
    """Coefficient of ``f_m`` in ``f_{m1} f_{m2}`` (no size check)."""
    a, b = m1.dim(), m2.dim()
    if vadd(a, b) != m.dim():
        return LaurentPoly()
    bound = sum(x * y for x, y in zip(a, b))
    counts = {q: product_counts(m, a, q).get((m1, m2), 0) for q in _sample_fields(bound)}
    F = _fit(counts, bound, f"product {m1} * {m2} -> {m}")
    return F.shift(form_m(b, a) + dim_orbit(m1) + dim_orbit(m2) - dim_orbit(m))


def coproduct_constant(m: Multisegment, m1: Multisegment, m2: Multisegment) -> LaurentPoly:
    """Coefficient of ``f_{m1} (x) f_{m2}`` in ``Delta(f_m)`` (no size check)."""
    a, b = m1.dim(), m2.dim()
    if vadd(a, b) != m.dim():
        return LaurentPoly()
    if m1.is_empty():
        return ONE if m2 == m else LaurentPoly()
    if m2.is_empty():
        return ONE if m1 == m else LaurentPoly()
    bound = edge_sum(b, a)
    counts = {q: extension_counts(m1, m2, q).get(m, 0) for q in _sample_fields(bound)}
    G = _fit(counts, bound, f"coproduct {m} -> {m1} (x) {m2}")
    return G.shift(form_n(b, a) + dim_orbit(m) - dim_orbit(m1) - dim_orbit(m2))


# ---------------------------------------------------------------------------
# elements


def _coerce(c):
    if isinstance(c, LaurentPoly):
        return to_field(c)
    if isinstance(c, int):
        return K(c)
    return c


class HallElement:
    """Finite sum ``sum_m c_m f_m`` with coefficients in Q(v)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Multisegment, object]] = None):
        self.terms: Dict[Multisegment, object] = {}
        for m, c in (terms or {}).items():
            c = _coerce(c)
            if c:
                self.terms[m] = self.terms.get(m, K(0)) + c
        self.terms = {m: c for m, c in self.terms.items() if c}
        dims = {m.dim() for m in self.terms}
        if len(dims) > 1:
            raise ValueError("HallElement must be homogeneous")

    @classmethod
    def basis(cls, m: Multisegment) -> "HallElement":
        return cls({m: K(1)})

    @property
    def degree(self) -> Optional[DimVector]:
        for m in self.terms:
            return m.dim()
        return None

    def __getitem__(self, m: Multisegment):
        return self.terms.get(m, K(0))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "HallElement") -> "HallElement":
        d = dict(self.terms)
        for m, c in other.terms.items():
            d[m] = d.get(m, K(0)) + c
        return HallElement(d)

    def __neg__(self):
        return HallElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "HallElement":
        c = _coerce(c)
        return HallElement({m: c * x for m, x in self.terms.items()})

    def __mul__(self, other: "HallElement") -> "HallElement":
        return multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, HallElement) and self.terms == other.terms

    def laurent_terms(self) -> Dict[Multisegment, LaurentPoly]:
        return {m: from_field(c) for m, c in self.terms.items()}

    def __repr__(self):
        body = " + ".join(f"({c})*f[{format_multisegment(m)}]" for m, c in sorted(self.terms.items()))
        return f"HallElement({body or '0'})"


def hall_product(m1: Multisegment, m2: Multisegment, max_dim: int = DEFAULT_MAX_DIM) -> HallElement:
    """``f_{m1} f_{m2}`` expanded in the basis ``f_m``."""
    d = vadd(m1.dim(), m2.dim())
    _check_size(sum(d), max_dim)
    return HallElement({m: product_constant(m1, m2, m) for m in multisegments_of_dim(d)})


def hall_coproduct(m: Multisegment, a: Sequence[int], b: Sequence[int],
                   max_dim: int = DEFAULT_MAX_DIM) -> Dict[Tuple[Multisegment, Multisegment], LaurentPoly]:
    """The component ``Delta_{a,b}(f_m)``."""
    a, b = tuple(a), tuple(b)
    if vadd(a, b) != m.dim():
        raise ValueError("a + b must equal dim m")
    _check_size(sum(a) + sum(b), max_dim)
    out = {}
    for m1 in multisegments_of_dim(a):
        for m2 in multisegments_of_dim(b):
            c = coproduct_constant(m, m1, m2)
            if c:
                out[(m1, m2)] = c
    return out


def multiply(x: HallElement, y: HallElement, max_dim: int = DEFAULT_MAX_DIM) -> HallElement:
    out = HallElement()
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            out = out + hall_product(m1, m2, max_dim).scale(c1 * c2)
    return out


def coproduct(x: HallElement, a: Sequence[int], b: Sequence[int],
              max_dim: int = DEFAULT_MAX_DIM) -> Dict[Tuple[Multisegment, Multisegment], object]:
    out: Dict[Tuple[Multisegment, Multisegment], object] = {}
    for m, c in x.terms.items():
        for pair, k in hall_coproduct(m, a, b, max_dim).items():
            out[pair] = out.get(pair, K(0)) + c * to_field(k)
    return {p: c for p, c in out.items() if c}


def k_twist(a: Sequence[int], b: Sequence[int]):
    """``<k_a, k_b> = v^{-a.b}`` with ``a.b = n(a,b) + n(b,a)``."""
    return to_field(v_power(-sym_form(a, b)))


def bilinear_form(x: HallElement, y: HallElement, a: Optional[Sequence[int]] = None,
                  b: Optional[Sequence[int]] = None):
    """``<x k_a, y k_b>`` with the diagonal form on ``f_m``."""
    n = next((m.n for m in list(x.terms) + list(y.terms)), 2)
    a = tuple(a) if a is not None else (0,) * n
    b = tuple(b) if b is not None else (0,) * n
    total = K(0)
    for m, c in x.terms.items():
        c2 = y.terms.get(m)
        if c2:
            total += c * c2 * form_diagonal(m)
    if total and (any(a) and any(b)):
        total *= k_twist(a, b)
    return total


def tensor_form(f: HallElement, g: HallElement, pairs: Mapping[Tuple[Multisegment, Multisegment], object]):
    """``<f (x) g, sum c m1 (x) m2>`` with untwisted factors (``f`` carries no ``k``)."""
    total = K(0)
    for (m1, m2), c in pairs.items():
        if f.terms.get(m1) and g.terms.get(m2):
            total += c * f.terms[m1] * form_diagonal(m1) * g.terms[m2] * form_diagonal(m2)
    return total


def green_check(f: HallElement, g: HallElement, h: HallElement, max_dim: int = DEFAULT_MAX_DIM) -> bool:
    """``<fg, h> = <f (x) g, Delta~(h)>``."""
    if f.is_zero() or g.is_zero() or h.is_zero():
        return True
    if vadd(f.degree, g.degree) != h.degree:
        return True
    lhs = bilinear_form(multiply(f, g, max_dim), h)
    rhs = tensor_form(f, g, coproduct(h, f.degree, g.degree, max_dim))
    return lhs == rhs


# ---------------------------------------------------------------------------
# e'_i and the center


def simple(i: int, n: int) -> Multisegment:
    return Multisegment(n, {(i % n, 1): 1})


def e_prime(i: int, x: HallElement) -> HallElement:
    """Adjoint of left multiplication by ``f_i`` for the diagonal form.

    ``<e'_i f_m, f_m''> = <f_m, f_i f_m''>`` gives
    ``e'_i f_m = sum_m'' c^m_{i,m''} <f_m,f_m>/<f_m'',f_m''> f_m''``.
    """
    out: Dict[Multisegment, object] = {}
    for m, c in x.terms.items():
        n = m.n
        d = m.dim()
        if d[i % n] == 0:
            continue
        s = simple(i, n)
        b = vsub(d, s.dim())
        for m2 in multisegments_of_dim(b):
            k = product_constant(s, m2, m)
            if k:
                coef = c * to_field(k) * form_diagonal(m) / form_diagonal(m2)
                out[m2] = out.get(m2, K(0)) + coef
    return HallElement(out)


def _e_prime_rows(d: DimVector, n: int):
    cols = multisegments_of_dim(d)
    rows = []
    for i in range(n):
        if d[i] == 0:
            continue
        per: Dict[Multisegment, Dict[Multisegment, object]] = {}
        for m in cols:
            for m2, c in e_prime(i, HallElement.basis(m)).terms.items():
                per.setdefault(m2, {})[m] = c
        rows.extend(per.values())
    return rows, cols


def _clear_denominators(vec: Mapping[Multisegment, object]) -> Dict[Multisegment, object]:
    den = None
    for c in vec.values():
        den = c.denom if den is None else den.lcm(c.denom)
    return {m: c * K(den) for m, c in vec.items()}


def center_dimension(d: Sequence[int]) -> int:
    """``dim`` of ``R[d] = intersection of Ker e'_i`` on the component ``U[d]``."""
    d = tuple(d)
    rows, cols = _e_prime_rows(d, len(d))
    return len(nullspace(rows, cols))


def center_component(n: int, k: int, check: bool = True) -> List[HallElement]:
    """Basis of ``R[k s]``; its dimension is the number of partitions of ``k``."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    d = vscale(k, s_vector(n))
    rows, cols = _e_prime_rows(d, n)
    basis = [HallElement(_clear_denominators(v)) for v in nullspace(rows, cols)]
    if check and len(basis) != partition_count(k):
        raise HallError(f"center component has dimension {len(basis)}, expected {partition_count(k)}")
    return basis


def segment_lengths_element(n: int) -> HallElement:
    """``sum over dim m = s`` of ``(v - v^-1)^{(n-1) - sum (l_i - 1)} f_m``."""
    out = {}
    for m in multisegments_of_dim(s_vector(n)):
        e = (n - 1) - sum(l - 1 for _, l in m.segments())
        out[m] = (VF - 1 / VF) ** e
    return HallElement(out)


def is_proportional(x: HallElement, y: HallElement) -> bool:
    ms = set(x.terms) | set(y.terms)
    if set(x.terms) != set(y.terms):
        return False
    if not ms:
        return True
    m0 = min(ms)
    r = x.terms[m0] / y.terms[m0]
    return all(x.terms[m] == r * y.terms[m] for m in ms)


def in_span(x: HallElement, basis: Sequence[HallElement]) -> bool:
    from .linalg import rank

    cols = sorted(set(x.terms).union(*[b.terms for b in basis]))
    rows = [dict(b.terms) for b in basis]
    return rank(rows + [dict(x.terms)], cols) == rank(rows, cols)


def leading_term_check(x: HallElement, target: Multisegment, shift: int) -> bool:
    """``(-v)^shift x`` lies in ``f_target + v L`` with ``L`` the S-span of the ``f_m``."""
    sign = -1 if shift % 2 else 1
    y = x.scale(to_field(v_power(shift)) * sign)
    for m, c in y.terms.items():
        if not is_laurent(c):
            if not _in_local_ring(c, 1 if m == target else 0):
                return False
            continue
        p = from_field(c) - (ONE if m == target else LaurentPoly())
        if p and p.min_degree() < 1:
            return False
    return target in y.terms


def _in_local_ring(c, const: int) -> bool:
    """``c`` is regular at ``v = 0`` with value ``const`` there (and ``c - const`` in ``vS``)."""
    num, den = c.numer, c.denom
    nd = {mon[0]: co for mon, co in den.terms()}
    nn = {mon[0]: co for mon, co in num.terms()}
    dmin = min(nd)
    nmin = min(nn) if nn else None
    if nmin is None:
        return const == 0
    if nmin < dmin:
        return False
    if nmin > dmin:
        return const == 0
    return nn[nmin] / nd[dmin] == const


# ---------------------------------------------------------------------------
# periodic pieces: a_nu, column coproduct constants and the I^m machinery


def periodic_multisegment(lam: Sequence[int], n: int) -> Multisegment:
    """``m(n lam)``: the multisegment of the ``n``-fold stretched partition."""
    return multisegment_of_partition(n_stretch(lam, n), n)


def trivial_periodic(l: int, n: int) -> Multisegment:
    return Multisegment.trivial(vscale(l, s_vector(n)))


def column_coproduct_constant(m: Multisegment, l: int, mu: Sequence[int], orientation: str = "sub") -> LaurentPoly:
    """Coefficient of ``f_{ls} (x) f_{n mu}`` in ``Delta(f_m)``.

    ``orientation="sub"`` reads it literally (trivial module as the first,
    sub, factor); ``"quotient"`` takes ``f_{n mu} (x) f_{ls}`` instead, which
    is the orientation of the ``I^m`` variety.
    """
    n = m.n
    t = trivial_periodic(l, n)
    p = periodic_multisegment(mu, n)
    if orientation == "sub":
        return coproduct_constant(m, t, p)
    if orientation == "quotient":
        return coproduct_constant(m, p, t)
    raise ValueError("orientation must be 'sub' or 'quotient'")


def I_m_count(m: Multisegment, mu: Sequence[int], l: int, q: int) -> int:
    """``#{x in O_m : x|V' = y, Im x in V'}`` with ``y`` in ``O_{m(n mu)}`` on ``V'``."""
    n = m.n
    y = periodic_multisegment(mu, n)
    if vadd(y.dim(), vscale(l, s_vector(n))) != m.dim():
        raise ValueError("dim m must equal (l + |mu|) s")
    return extension_counts(y, trivial_periodic(l, n), q).get(m, 0)


def I_m_polynomial(m: Multisegment, mu: Sequence[int], l: int) -> LaurentPoly:
    """``#I^m`` as a polynomial in ``Q = v^-2``."""
    n = m.n
    bound = edge_sum(vscale(l, s_vector(n)), periodic_multisegment(mu, n).dim())
    counts = {q: I_m_count(m, mu, l, q) for q in _sample_fields(bound)}
    return _fit(counts, bound, f"I^m count for {m}")


def count_degree(p: LaurentPoly) -> Optional[int]:
    """Degree in ``Q`` of a count polynomial written in ``v`` (``Q = v^-2``)."""
    if not p:
        return None
    return -p.min_degree() // 2


def count_at(p: LaurentPoly, q: int) -> int:
    """Value at field size ``q`` of a count polynomial written in ``v``."""
    total = 0
    for e, c in p.items():
        if e % 2 or e > 0:
            raise ValueError("not a polynomial in Q = v^-2")
        total += c * q ** (-e // 2)
    return total


def theta_matrix(m: Multisegment, mu: Sequence[int]) -> Tuple[JordanData, List[List[int]]]:
    """Jordan data of ``y`` in ``O_{m(n mu)}`` and ``theta = d~ - d``."""
    n = m.n
    Jy = jordan_data(periodic_multisegment(mu, n))
    Jx = jordan_data(m)
    L = max(len(Jx.d), len(Jy.d))
    theta = [[Jx.entry(k, j) - Jy.entry(k, j) for j in range(n)] for k in range(1, L + 1)]
    return Jy, theta


def dim_I_formula(m: Multisegment, mu: Sequence[int]) -> int:
    """``sum_j (sum_{k != i} theta^k_j d^i_j + sum_{k > i} theta^k_j theta^i_j)``."""
    Jy, th = theta_matrix(m, mu)
    L = len(th)
    total = 0
    for j in range(m.n):
        for i in range(1, L + 1):
            for k in range(1, L + 1):
                if k != i:
                    total += th[k - 1][j] * Jy.entry(i, j)
                if k > i:
                    total += th[k - 1][j] * th[i - 1][j]
    return total


def orbit_difference_formula(m: Multisegment, mu: Sequence[int]) -> int:
    """``sum_j (2 sum_{k != i} theta^k_j d^i_j + sum_{k > i} (theta^k_j + theta^k_{j-1}) theta^i_j)``."""
    Jy, th = theta_matrix(m, mu)
    n, L = m.n, len(th)
    total = 0
    for j in range(n):
        for i in range(1, L + 1):
            for k in range(1, L + 1):
                if k != i:
                    total += 2 * th[k - 1][j] * Jy.entry(i, j)
                if k > i:
                    total += (th[k - 1][j] + th[k - 1][(j - 1) % n]) * th[i - 1][j]
    return total


@dataclass
class ThetaReport:
    h: int
    n: int
    l: int
    checked: int
    counterexample: Optional[Tuple[Tuple[int, ...], ...]] = None
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def _theta_sides(theta: Sequence[Sequence[int]], n: int) -> Tuple[int, int]:
    h = len(theta)
    lhs = rhs = 0
    for j in range(n):
        for i in range(h):
            for k in range(i + 1, h):
                lhs += theta[k][(j - 1) % n] * theta[i][j]
                rhs += theta[k][j] * theta[i][j]
    return lhs, rhs


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def theta_claim_check(h: int, n: int, l: int) -> ThetaReport:
    """Exhaustive check of the column inequality with its equality case."""
    report = ThetaReport(h, n, l, 0)
    columns = list(_compositions(l, h))
    for choice in product(columns, repeat=n):
        theta = tuple(tuple(choice[j][i] for j in range(n)) for i in range(h))
        lhs, rhs = _theta_sides(theta, n)
        report.checked += 1
        constant = all(len(set(row)) == 1 for row in theta)
        if lhs < rhs:
            report.counterexample, report.reason = theta, f"lhs {lhs} < rhs {rhs}"
            return report
        if (lhs == rhs) != constant:
            report.counterexample, report.reason = theta, f"equality {lhs == rhs} but constant {constant}"
            return report
    return report


def theta_sides(theta: Sequence[Sequence[int]], n: int) -> Tuple[int, int]:
    return _theta_sides(theta, n)
