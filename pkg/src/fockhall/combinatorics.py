"""Partitions, cyclic segments and multisegments, and the maps between them.

Conventions fixed here and used everywhere else:

* residues live in ``range(n)``;
* the segment ``[i;l)`` covers residues ``i, i+1, ..., i+l-1`` (mod n);
* the cell in row ``r``, column ``c`` (both 1-indexed) has content ``c - r``;
* ``multisegment_of_partition`` sends row ``r`` of length ``lam_r`` to the
  segment starting at residue ``(1 - r) mod n`` with length ``lam_r``, i.e.
  the contents of that row read left to right.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

Cell = Tuple[int, int]
DimVector = Tuple[int, ...]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, i: int) -> int:
        """1-indexed part, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> List[Cell]:
        return [(r + 1, c + 1) for r, p in enumerate(self) for c in range(p)]

    def __str__(self):
        return format_partition(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"


EMPTY = Partition()


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(p) for p in lam)


def parse_partition(s: str) -> Partition:
    s = s.strip().strip("()")
    if not s:
        return EMPTY
    return Partition(int(x) for x in s.split(","))


@lru_cache(maxsize=None)
def partitions_of(n: int, max_part: Optional[int] = None) -> Tuple[Partition, ...]:
    """All partitions of ``n``, reverse lexicographic (so ``(n)`` first)."""
    if max_part is None:
        max_part = n
    if n == 0:
        return (EMPTY,)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append(Partition((first,) + tuple(rest)))
    return tuple(out)


def partition_count(k: int) -> int:
    return len(partitions_of(k))


def content(cell: Cell) -> int:
    return cell[1] - cell[0]


# dimension vectors and the bilinear forms attached to the cyclic quiver

def eps(i: int, n: int) -> DimVector:
    return tuple(1 if j == i % n else 0 for j in range(n))


def s_vector(n: int) -> DimVector:
    return (1,) * n


def vadd(a: Sequence[int], b: Sequence[int]) -> DimVector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[int], b: Sequence[int]) -> DimVector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(k: int, a: Sequence[int]) -> DimVector:
    return tuple(k * x for x in a)


def edge_sum(b: Sequence[int], a: Sequence[int]) -> int:
    """``sum over arrows i -> i+1 of b_i a_{i+1}``."""
    n = len(a)
    return sum(b[i] * a[(i + 1) % n] for i in range(n))


def form_m(b: Sequence[int], a: Sequence[int]) -> int:
    """Twist of the Hall product: ``sum a_i b_i + sum_arrows b_{i} a_{i+1}``."""
    return sum(x * y for x, y in zip(a, b)) + edge_sum(b, a)


def form_n(b: Sequence[int], a: Sequence[int]) -> int:
    """Twist of the restriction: ``sum_arrows b_{i} a_{i+1} - sum a_i b_i``."""
    return edge_sum(b, a) - sum(x * y for x, y in zip(a, b))


def sym_form(a: Sequence[int], d: Sequence[int]) -> int:
    """``a . d = n(a, d) + n(d, a)``."""
    return form_n(a, d) + form_n(d, a)


def weight_i(i: int, gamma: Sequence[int]) -> int:
    """``2 g_i - g_{i-1} - g_{i+1}``."""
    n = len(gamma)
    return 2 * gamma[i % n] - gamma[(i - 1) % n] - gamma[(i + 1) % n]


# segments and multisegments

class CyclicSegment(tuple):
    """``[start; length)`` with ``start`` reduced mod ``n``."""

    def __new__(cls, start: int, length: int, n: int):
        if length < 1:
            raise ValueError("segment length must be >= 1")
        if n < 1:
            raise ValueError("n must be positive")
        return super().__new__(cls, (start % n, length, n))

    @property
    def start(self) -> int:
        return self[0]

    @property
    def length(self) -> int:
        return self[1]

    @property
    def n(self) -> int:
        return self[2]

    def residues(self) -> List[int]:
        return [(self.start + t) % self.n for t in range(self.length)]

    def __str__(self):
        return f"[{self.start};{self.length})"


class Multisegment:
    """Finite multiset of cyclic segments for a fixed ``n``."""

    __slots__ = ("n", "_items", "_hash")

    def __init__(self, n: int, mult: Optional[Mapping[Tuple[int, int], int]] = None):
        self.n = int(n)
        d: Dict[Tuple[int, int], int] = {}
        for (i, l), a in (mult or {}).items():
            if l < 1:
                raise ValueError("segment length must be >= 1")
            if a < 0:
                raise ValueError("multiplicities must be nonnegative")
            if a:
                key = (i % self.n, l)
                d[key] = d.get(key, 0) + a
        self._items = tuple(sorted(d.items()))
        self._hash = hash((self.n, self._items))

    @classmethod
    def from_segments(cls, n: int, segs: Iterable[Tuple[int, int]]) -> "Multisegment":
        d: Dict[Tuple[int, int], int] = {}
        for i, l in segs:
            key = (i % n, l)
            d[key] = d.get(key, 0) + 1
        return cls(n, d)

    @classmethod
    def trivial(cls, dim: Sequence[int]) -> "Multisegment":
        """The semisimple module of dimension ``dim``."""
        return cls(len(dim), {(i, 1): a for i, a in enumerate(dim) if a})

    @property
    def multiplicities(self) -> Dict[Tuple[int, int], int]:
        return dict(self._items)

    def items(self) -> Tuple[Tuple[Tuple[int, int], int], ...]:
        return self._items

    def mult(self, i: int, l: int) -> int:
        return dict(self._items).get((i % self.n, l), 0)

    def segments(self) -> List[Tuple[int, int]]:
        """Segments with repetition, sorted."""
        return [key for key, a in self._items for _ in range(a)]

    def __len__(self) -> int:
        return sum(a for _, a in self._items)

    @property
    def size(self) -> int:
        return len(self)

    def is_empty(self) -> bool:
        return not self._items

    def dim(self) -> DimVector:
        return dim_vector(self)

    def __add__(self, other: "Multisegment") -> "Multisegment":
        self._check(other)
        d = dict(self._items)
        for k, a in other._items:
            d[k] = d.get(k, 0) + a
        return Multisegment(self.n, d)

    def __sub__(self, other: "Multisegment") -> "Multisegment":
        self._check(other)
        d = dict(self._items)
        for k, a in other._items:
            d[k] = d.get(k, 0) - a
            if d[k] < 0:
                raise ValueError("multisegment difference is not effective")
        return Multisegment(self.n, d)

    def _check(self, other):
        if other.n != self.n:
            raise ValueError("multisegments for different n")

    def __eq__(self, other):
        return isinstance(other, Multisegment) and self.n == other.n and self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return (self.n, self._items) < (other.n, other._items)

    def __str__(self):
        return format_multisegment(self)

    def __repr__(self):
        return f"Multisegment(n={self.n}, {format_multisegment(self)})"


def format_multisegment(m: Multisegment) -> str:
    if m.is_empty():
        return "0"
    parts = []
    for (i, l), a in m.items():
        parts.append(f"[{i};{l})" if a == 1 else f"{a}[{i};{l})")
    return "+".join(parts)


_SEG = re.compile(r"^\s*(\d*)\s*\[\s*(-?\d+)\s*;\s*(\d+)\s*\)\s*$")


def parse_multisegment(s: str, n: int) -> Multisegment:
    s = s.strip()
    if s in ("", "0"):
        return Multisegment(n)
    d: Dict[Tuple[int, int], int] = {}
    for term in s.split("+"):
        m = _SEG.match(term)
        if not m:
            raise ValueError(f"cannot parse segment term {term!r}")
        a = int(m.group(1)) if m.group(1) else 1
        key = (int(m.group(2)) % n, int(m.group(3)))
        if key[1] < 1:
            raise ValueError("segment length must be >= 1")
        d[key] = d.get(key, 0) + a
    return Multisegment(n, d)


def dim_vector(m: Multisegment) -> DimVector:
    out = [0] * m.n
    for (i, l), a in m.items():
        for t in range(l):
            out[(i + t) % m.n] += a
    return tuple(out)


def multisegment_of_partition(lam: Sequence[int], n: int) -> Multisegment:
    if n < 2:
        raise ValueError("n must be at least 2")
    return Multisegment.from_segments(n, [((1 - r) % n, p) for r, p in enumerate(lam, start=1) if p])


def decompose_periodic_aperiodic(m: Multisegment) -> Tuple[Multisegment, Multisegment]:
    """Split ``m = p + a`` with ``p`` completely periodic and ``a`` aperiodic."""
    lengths = {l for (_, l), _ in m.items()}
    per: Dict[Tuple[int, int], int] = {}
    for l in lengths:
        c = min(m.mult(i, l) for i in range(m.n))
        if c:
            for i in range(m.n):
                per[(i, l)] = c
    p = Multisegment(m.n, per)
    return p, m - p


def is_aperiodic(m: Multisegment) -> bool:
    return decompose_periodic_aperiodic(m)[0].is_empty()


def is_completely_periodic(m: Multisegment) -> bool:
    return decompose_periodic_aperiodic(m)[1].is_empty()


def is_n_regular(lam: Sequence[int], n: int) -> bool:
    """No nonzero part is repeated ``n`` or more times.

    Equivalently ``lam_i > lam_{i+n-1}`` whenever ``lam_i > 0``; this is the
    condition under which the row segments of ``lam`` form an aperiodic
    multisegment.
    """
    lam = list(lam)
    for i in range(len(lam)):
        j = i + n - 1
        if j < len(lam) and lam[i] == lam[j]:
            return False
    return True


def n_stretch(lam: Sequence[int], n: int) -> Partition:
    return Partition(p for p in lam for _ in range(n))


def regular_periodic_split(lam: Sequence[int], n: int) -> Tuple[Partition, Partition]:
    """``(lam', mu)`` with ``m(lam) = m(lam') + m(n mu)`` and ``lam'`` n-regular."""
    counts: Dict[int, int] = {}
    for p in lam:
        counts[p] = counts.get(p, 0) + 1
    reg, per = [], []
    for p in sorted(counts, reverse=True):
        q, r = divmod(counts[p], n)
        reg += [p] * r
        per += [p] * q
    return Partition(reg), Partition(per)


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    if sum(mu) != sum(lam):
        raise ValueError("dominance order compares partitions of the same size")
    a = b = 0
    for k in range(max(len(mu), len(lam))):
        a += mu[k] if k < len(mu) else 0
        b += lam[k] if k < len(lam) else 0
        if a > b:
            return False
    return True


def addable_cells(lam: Sequence[int]) -> List[Cell]:
    out = []
    lam = list(lam)
    for r in range(len(lam) + 1):
        row_len = lam[r] if r < len(lam) else 0
        above = lam[r - 1] if r > 0 else None
        if above is None or above > row_len:
            out.append((r + 1, row_len + 1))
    return out


def removable_cells(lam: Sequence[int]) -> List[Cell]:
    out = []
    lam = list(lam)
    for r in range(len(lam)):
        below = lam[r + 1] if r + 1 < len(lam) else 0
        if lam[r] > below:
            out.append((r + 1, lam[r]))
    return out


def addable_removable_nodes(lam: Sequence[int], i: int, n: int) -> Tuple[List[Cell], List[Cell]]:
    """Addable and removable cells of residue ``i`` (content mod n), by row."""
    add = [c for c in addable_cells(lam) if content(c) % n == i % n]
    rem = [c for c in removable_cells(lam) if content(c) % n == i % n]
    return add, rem


def add_cell(lam: Sequence[int], cell: Cell) -> Partition:
    parts = list(lam)
    r = cell[0]
    if r == len(parts) + 1:
        parts.append(0)
    parts[r - 1] += 1
    return Partition(parts)


def remove_cell(lam: Sequence[int], cell: Cell) -> Partition:
    parts = list(lam)
    parts[cell[0] - 1] -= 1
    return Partition(parts)


def residue_content(lam: Sequence[int], n: int) -> DimVector:
    """Number of cells of each residue."""
    out = [0] * n
    for r, p in enumerate(lam, start=1):
        for c in range(1, p + 1):
            out[(c - r) % n] += 1
    return tuple(out)


def multisegments_of_dim(dim: Sequence[int]) -> List[Multisegment]:
    """Every multisegment with the given dimension vector (sorted)."""
    dim = tuple(dim)
    n = len(dim)
    total = sum(dim)
    segs = [(i, l) for l in range(1, total + 1) for i in range(n)]
    seg_dims = {s: dim_vector(Multisegment.from_segments(n, [s])) for s in segs}
    out: List[Multisegment] = []

    def rec(k: int, remaining: DimVector, chosen: Dict[Tuple[int, int], int]):
        if not any(remaining):
            out.append(Multisegment(n, chosen))
            return
        if k == len(segs):
            return
        s = segs[k]
        sd = seg_dims[s]
        a = 0
        rem = remaining
        while all(x >= 0 for x in rem):
            if a:
                chosen[s] = a
            rec(k + 1, rem, chosen)
            a += 1
            rem = vsub(rem, sd)
        chosen.pop(s, None)

    rec(0, dim, {})
    return sorted(out)


def dim_vectors_upto(n: int, total: int) -> Iterator[DimVector]:
    """Dimension vectors with entry sum ``total``."""
    def rec(k, left):
        if k == n - 1:
            yield (left,)
            return
        for a in range(left, -1, -1):
            for rest in rec(k + 1, left - a):
                yield (a,) + rest
    yield from rec(0, total)
