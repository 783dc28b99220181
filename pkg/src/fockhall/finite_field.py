"""Small finite fields and the linear algebra needed for orbit counting.

Elements of ``GF(q)`` are the integers ``0..q-1``.  For prime ``q`` this is
arithmetic mod ``q``; for ``q = p^e`` an element encodes the coefficients of
a polynomial over ``F_p`` in base ``p``, reduced by a fixed irreducible
polynomial.  All operations go through precomputed tables.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, List, Sequence, Tuple

Vec = Tuple[int, ...]


def _prime_power(q: int) -> Tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
    raise ValueError(f"{q} is not a prime power")


def _poly_mul_mod(a: List[int], b: List[int], mod: List[int], p: int) -> List[int]:
    e = len(mod) - 1
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            res[i + j] = (res[i + j] + x * y) % p
    # reduce by the monic modulus
    for k in range(len(res) - 1, e - 1, -1):
        c = res[k]
        if c:
            for t in range(e + 1):
                res[k - e + t] = (res[k - e + t] - c * mod[t]) % p
    return (res + [0] * e)[:e]


def _irreducible(p: int, e: int) -> List[int]:
    for tail in product(range(p), repeat=e):
        mod = list(tail) + [1]
        if mod[0] == 0:
            continue
        # no roots is enough for degree <= 3
        if e <= 3 and all(sum(c * pow(x, k, p) for k, c in enumerate(mod)) % p for x in range(p)):
            return mod
    raise ValueError(f"no irreducible polynomial found for GF({p}^{e})")


class GF:
    """The field with ``q`` elements."""

    def __init__(self, q: int):
        p, e = _prime_power(q)
        if e > 3:
            raise ValueError("only fields of degree <= 3 over the prime field are supported")
        self.q, self.p, self.e = q, p, e
        if e == 1:
            self.add = [[(a + b) % p for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % p for b in range(q)] for a in range(q)]
        else:
            mod = _irreducible(p, e)

            def digits(a):
                return [(a // p ** k) % p for k in range(e)]

            def number(d):
                return sum(c * p ** k for k, c in enumerate(d))

            self.add = [[number([(x + y) % p for x, y in zip(digits(a), digits(b))]) for b in range(q)] for a in range(q)]
            self.mul = [[number(_poly_mul_mod(digits(a), digits(b), mod, p)) for b in range(q)] for a in range(q)]
        self.neg = [next(b for b in range(q) if self.add[a][b] == 0) for a in range(q)]
        self.inv = [0] + [next(b for b in range(q) if self.mul[a][b] == 1) for a in range(1, q)]
        self.sub = [[self.add[a][self.neg[b]] for b in range(q)] for a in range(q)]

    def __repr__(self):
        return f"GF({self.q})"

    # vectors and matrices are tuples / lists of rows

    def mat_vec(self, M: Sequence[Sequence[int]], x: Sequence[int]) -> Vec:
        add, mul = self.add, self.mul
        out = []
        for row in M:
            s = 0
            for a, b in zip(row, x):
                if a and b:
                    s = add[s][mul[a][b]]
            out.append(s)
        return tuple(out)

    def mat_mul(self, A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: int) -> List[List[int]]:
        add, mul = self.add, self.mul
        cols = len(B[0]) if B else 0
        out = []
        for row in A:
            r = [0] * cols
            for k in range(inner):
                a = row[k]
                if a:
                    ma = mul[a]
                    for j, b in enumerate(B[k]):
                        if b:
                            r[j] = add[r[j]][ma[b]]
            out.append(r)
        return out

    def rank(self, rows: Sequence[Sequence[int]]) -> int:
        """Rank of a list of row vectors."""
        rows = [list(r) for r in rows if any(r)]
        if not rows:
            return 0
        add, mul, inv, neg = self.add, self.mul, self.inv, self.neg
        width = len(rows[0])
        r = 0
        for col in range(width):
            piv = next((k for k in range(r, len(rows)) if rows[k][col]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            f = inv[rows[r][col]]
            prow = [mul[f][x] for x in rows[r]]
            rows[r] = prow
            for k in range(r + 1, len(rows)):
                c = rows[k][col]
                if c:
                    nc = neg[c]
                    rows[k] = [add[x][mul[nc][y]] for x, y in zip(rows[k], prow)]
            r += 1
            if r == len(rows):
                break
        return r

    def subspaces(self, k: int, d: int) -> Iterator[Tuple[Vec, ...]]:
        """Every ``k``-dimensional subspace of ``F^d`` as its RREF basis."""
        if k == 0:
            yield ()
            return
        for pivots in combinations(range(d), k):
            free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, d) if c not in pivots]
            for vals in product(range(self.q), repeat=len(free)):
                rows = [[0] * d for _ in range(k)]
                for r, c in enumerate(pivots):
                    rows[r][c] = 1
                for (r, c), a in zip(free, vals):
                    rows[r][c] = a
                yield tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def gl_order(a: int, q: int) -> int:
    out = 1
    for k in range(a):
        out *= q ** a - q ** k
    return out


def grassmannian_size(k: int, d: int, q: int) -> int:
    num = den = 1
    for t in range(k):
        num *= q ** (d - t) - 1
        den *= q ** (t + 1) - 1
    return num // den
