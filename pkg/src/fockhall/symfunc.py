"""Symmetric functions in the power-sum basis.

Power sums are the only stored representation: Schur functions are expanded
through symmetric-group characters, and products are converted back to the
Schur basis through the Hall inner product ``<p_rho, s_lam> = chi^lam(rho)``.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, Optional, Tuple

from .combinatorics import Partition, partitions_of


class PowerSumExpansion:
    """Finite sum ``sum_rho c_rho p_rho`` with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Partition, Fraction]] = None):
        self.terms: Dict[Partition, Fraction] = {}
        for rho, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                rho = Partition(sorted(rho, reverse=True))
                self.terms[rho] = self.terms.get(rho, Fraction(0)) + c
        self.terms = {r: c for r, c in self.terms.items() if c}

    @classmethod
    def p(cls, rho: Iterable[int]) -> "PowerSumExpansion":
        return cls({Partition(sorted(rho, reverse=True)): Fraction(1)})

    def degrees(self):
        return {sum(r) for r in self.terms}

    def __add__(self, other: "PowerSumExpansion") -> "PowerSumExpansion":
        d = dict(self.terms)
        for r, c in other.terms.items():
            d[r] = d.get(r, Fraction(0)) + c
        return PowerSumExpansion(d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSumExpansion({r: c * other for r, c in self.terms.items()})
        d: Dict[Partition, Fraction] = {}
        for r1, c1 in self.terms.items():
            for r2, c2 in other.terms.items():
                r = Partition(sorted(r1 + r2, reverse=True))
                d[r] = d.get(r, Fraction(0)) + c1 * c2
        return PowerSumExpansion(d)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, PowerSumExpansion) and self.terms == other.terms

    def __repr__(self):
        body = " + ".join(f"{c}*p{tuple(r)}" for r, c in sorted(self.terms.items()))
        return f"PowerSumExpansion({body or '0'})"

    def schur_coefficient(self, lam: Partition) -> Fraction:
        """``<self, s_lam>``; only the degree ``|lam|`` part contributes."""
        k = sum(lam)
        return sum((c * mn_character(lam, r) for r, c in self.terms.items() if sum(r) == k), Fraction(0))

    def to_schur(self) -> Dict[Partition, Fraction]:
        out = {}
        for k in sorted(self.degrees()):
            for lam in partitions_of(k):
                c = self.schur_coefficient(lam)
                if c:
                    out[lam] = c
        return out


def z_factor(rho: Iterable[int]) -> int:
    out = 1
    for k, m in Counter(rho).items():
        out *= k ** m * factorial(m)
    return out


def _beta(lam: Tuple[int, ...], length: int) -> Tuple[int, ...]:
    lam = tuple(lam) + (0,) * (length - len(lam))
    return tuple(lam[j] + length - 1 - j for j in range(length))


@lru_cache(maxsize=None)
def _mn(beta: frozenset, rho: Tuple[int, ...]) -> int:
    # remove rim hooks of length rho[0] by sliding beads down on the abacus
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in beta:
            sign = -1 if sum(1 for c in beta if b - k < c < b) % 2 else 1
            total += sign * _mn((beta - {b}) | {b - k}, rest)
    return total


def mn_character(mu: Iterable[int], rho: Iterable[int]) -> int:
    """Character of the irreducible ``S_k``-module ``mu`` at cycle type ``rho``."""
    mu = tuple(mu)
    rho = tuple(sorted(rho, reverse=True))
    if sum(mu) != sum(rho):
        raise ValueError("character arguments must have the same size")
    return _mn(frozenset(_beta(mu, len(mu))), rho)


@lru_cache(maxsize=None)
def schur_in_power_sums(mu: Tuple[int, ...]) -> PowerSumExpansion:
    mu = Partition(mu)
    k = sum(mu)
    return PowerSumExpansion({rho: Fraction(mn_character(mu, rho), z_factor(rho)) for rho in partitions_of(k)})


def littlewood_richardson(lam, mu, nu) -> int:
    """Coefficient of ``s_lam`` in ``s_mu s_nu``."""
    lam, mu, nu = Partition(lam), Partition(mu), Partition(nu)
    if sum(lam) != sum(mu) + sum(nu):
        raise ValueError("sizes must satisfy |lam| = |mu| + |nu|")
    c = (schur_in_power_sums(tuple(mu)) * schur_in_power_sums(tuple(nu))).schur_coefficient(lam)
    if c.denominator != 1 or c < 0:
        raise ArithmeticError(f"LR coefficient {c} not a nonnegative integer")
    return int(c)


def column(l: int) -> Partition:
    return Partition((1,) * l)


def column_pieri_witness(nu) -> Optional[Tuple[int, Partition]]:
    """Some ``(l, mu)`` with ``l >= 1`` and ``c^nu_{(1^l), mu} = 1``."""
    nu = Partition(nu)
    for l in range(1, sum(nu) + 1):
        for mu in partitions_of(sum(nu) - l):
            if littlewood_richardson(nu, column(l), mu) == 1:
                return l, mu
    return None
