"""Named verification checks shared by the test-suite and ``fockhall verify``.

Each check takes the rank ``n`` and a size bound and returns a
``CheckResult``; sizes are clipped to what the underlying brute force can
afford.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

from . import fock, hall, wedge
from .combinatorics import (
    Partition,
    dominance_leq,
    is_n_regular,
    multisegments_of_dim,
    partitions_of,
    regular_periodic_split,
    s_vector,
    vadd,
    vscale,
)
from .laurent import ONE, LaurentPoly, quantum_integer
from .symfunc import column, littlewood_richardson


@dataclass
class CheckResult:
    name: str
    criterion: int
    ok: bool
    detail: str = ""
    seconds: float = 0.0
    data: Dict[str, object] = field(default_factory=dict)


def _timed(name: str, criterion: int, body: Callable[[], tuple]) -> CheckResult:
    t0 = time.perf_counter()
    ok, detail, *rest = body()
    return CheckResult(name, criterion, bool(ok), detail, time.perf_counter() - t0, rest[0] if rest else {})


def _partitions_upto(N: int) -> List[Partition]:
    return [lam for k in range(N + 1) for lam in partitions_of(k)]


# ---------------------------------------------------------------------------
# wedge


def _random_tensor(rng: random.Random, D: int, terms: int = 3) -> wedge.Vector:
    x: wedge.Vector = {}
    for _ in range(terms):
        mono = tuple(rng.randint(-8, 8) for _ in range(D))
        c = LaurentPoly({rng.randint(-2, 2): rng.choice([-2, -1, 1, 2])})
        wedge.add_into(x, mono, c)
    return x


def _T(k, x, n):
    return wedge.hecke_T(k, x, n)


def hecke_relation_failures(x: wedge.Vector, n: int) -> List[str]:
    """Every relation family evaluated on ``x``; returns the failing ones."""
    D = len(next(iter(x)))
    t = wedge.T_PARAM
    bad = []
    for k in range(1, D):
        y = wedge.vec_add(_T(k, x, n), x)
        if wedge.vec_add(_T(k, y, n), wedge.vec_scale(y, -t)):
            bad.append(f"quadratic T{k}")
        lhs = wedge.hecke_T(k, wedge.hecke_X(k, 1, _T(k, x, n), n), n)
        rhs = wedge.vec_scale(wedge.hecke_X(k + 1, 1, x, n), t)
        if wedge.vec_add(lhs, wedge.vec_scale(rhs, -1)):
            bad.append(f"bernstein T{k}")
        for j in range(1, D + 1):
            if j in (k, k + 1):
                continue
            a = wedge.hecke_X(j, 1, _T(k, x, n), n)
            b = _T(k, wedge.hecke_X(j, 1, x, n), n)
            if wedge.vec_add(a, wedge.vec_scale(b, -1)):
                bad.append(f"commutation T{k} X{j}")
    for k in range(1, D - 1):
        a = _T(k, _T(k + 1, _T(k, x, n), n), n)
        b = _T(k + 1, _T(k, _T(k + 1, x, n), n), n)
        if wedge.vec_add(a, wedge.vec_scale(b, -1)):
            bad.append(f"braid T{k}")
    for k in range(1, D):
        for l in range(k + 2, D):
            if wedge.vec_add(_T(k, _T(l, x, n), n), wedge.vec_scale(_T(l, _T(k, x, n), n), -1)):
                bad.append(f"commutation T{k} T{l}")
    for i in range(1, D + 1):
        for j in range(1, D + 1):
            a = wedge.hecke_X(i, 1, wedge.hecke_X(j, -1, x, n), n)
            b = wedge.hecke_X(j, -1, wedge.hecke_X(i, 1, x, n), n)
            if wedge.vec_add(a, wedge.vec_scale(b, -1)):
                bad.append(f"X commutativity {i},{j}")
    return bad


def check_hecke(n: int, samples: int = 500, max_D: int = 4, seed: int = 0) -> CheckResult:
    def body():
        rng = random.Random(seed + n)
        for s in range(samples):
            D = rng.randint(2, max_D)
            x = _random_tensor(rng, D)
            if not x:
                continue
            bad = hecke_relation_failures(x, n)
            if bad:
                return False, f"sample {s}: {bad[0]}"
        return True, f"{samples} random vectors, D <= {max_D}"
    return _timed(f"hecke_relations[n={n}]", 1, body)


def check_straightening(n: int, max_D: int = 3) -> CheckResult:
    def body():
        lo, hi = -2 * n, 2 * n
        count = 0
        for D in range(1, max_D + 1):
            for word in _words(D, lo, hi):
                count += 1
                got = wedge.normal_order(word, n)
                want = wedge.omega_normal_form_oracle({word: ONE}, D, None, n)
                if got != want:
                    return False, f"word {word}: {got} != {want}"
        return True, f"{count} words"
    return _timed(f"straightening[n={n}]", 2, body)


def _words(D: int, lo: int, hi: int):
    if D == 0:
        yield ()
        return
    for w in _words(D - 1, lo, hi):
        for a in range(lo, hi + 1):
            yield w + (a,)


# ---------------------------------------------------------------------------
# center of the Hall algebra


def check_center_element(n: int, max_size: int = 5) -> CheckResult:
    def body():
        basis = hall.center_component(n, 1)
        x = hall.segment_lengths_element(n)
        if len(basis) != 1 or not hall.is_proportional(x, basis[0]):
            return False, "explicit element does not span R[s]"
        for lam in _partitions_upto(min(max_size, 5)):
            v = fock.FockVector.basis(lam)
            if fock.hall_element_action(x, v, n) != fock.boson_p(1, v, n):
                return False, f"action differs from p_1 on {tuple(lam)}"
        return True, f"dim R[s] = 1; action = p_1 on |lam| <= {min(max_size, 5)}"
    return _timed(f"center_element[n={n}]", 3, body)


CENTER_SIZES = {2: 3, 3: 2}


def check_center_dimensions(n: int) -> CheckResult:
    def body():
        dims = {}
        for k in range(1, CENTER_SIZES.get(n, 1) + 1):
            got = len(hall.center_component(n, k, check=False))
            dims[k] = got
            if got != len(partitions_of(k)):
                return False, f"dim R[{k}s] = {got}, expected {len(partitions_of(k))}"
        off = [tuple(int(j == 0) for j in range(n)), tuple(2 if j == 0 else 1 for j in range(n))]
        for d in off:
            if hall.center_dimension(d) != 0:
                return False, f"nonzero center in degree {d}"
        return True, f"dims {dims}; zero in {off}"
    return _timed(f"center_dimensions[n={n}]", 4, body)


# ---------------------------------------------------------------------------
# Fock space operators


def check_commutator(n: int, max_size: int = 5, max_k: int = 2) -> CheckResult:
    def body():
        checked = 0
        for k in range(1, max_k + 1):
            d = tuple([k] * n)
            for i in range(n):
                dm = tuple(k - (j == i) for j in range(n))
                eps_i = tuple(int(j == i) for j in range(n))
                for lam in _partitions_upto(min(max_size, 5)):
                    x = fock.FockVector.basis(lam)
                    lhs = fock.e_action(i, fock.f_trivial_action(d, x, n), n) - \
                        fock.f_trivial_action(d, fock.e_action(i, x, n), n)
                    y = fock.f_trivial_action(dm, x, n)
                    rhs = fock.FockVector({mu: c * quantum_integer(fock.k_exponent(eps_i, mu, n) - 1)
                                           for mu, c in y.items()})
                    checked += 1
                    if lhs != rhs:
                        return False, f"k={k}, i={i}, lam={tuple(lam)}"
        return True, f"{checked} (k, i, lam) cases"
    return _timed(f"commutator[n={n}]", 5, body)


def check_boson_commute(n: int, max_size: int = 5, max_k: int = 3) -> CheckResult:
    def body():
        for k in range(1, max_k + 1):
            for i in range(n):
                for lam in _partitions_upto(min(max_size, 5)):
                    x = fock.FockVector.basis(lam)
                    if fock.boson_p(k, fock.f_action(i, x, n), n) != fock.f_action(i, fock.boson_p(k, x, n), n):
                        return False, f"[p_{k}, f_{i}] != 0 on {tuple(lam)}"
                    if fock.boson_p(k, fock.e_action(i, x, n), n) != fock.e_action(i, fock.boson_p(k, x, n), n):
                        return False, f"[p_{k}, e_{i}] != 0 on {tuple(lam)}"
        return True, f"k <= {max_k}, |lam| <= {min(max_size, 5)}"
    return _timed(f"boson_commute[n={n}]", 6, body)


def canonical_report(table: fock.CanonicalBasisTable, n: int) -> Optional[str]:
    """First failed canonical-basis property of ``table``, or ``None``."""
    pos = {p: k for k, p in enumerate(table.order)}
    for lam, col in table.vectors.items():
        if col.get(lam) != ONE:
            return f"b{table.sign}_{tuple(lam)} has diagonal {col.get(lam)}"
        for mu, c in col.items():
            if mu == lam:
                continue
            if pos[mu] < pos[lam]:
                return f"b{table.sign}_{tuple(lam)} not triangular at {tuple(mu)}"
            if table.direction == "down" and not dominance_leq(mu, lam):
                return f"b{table.sign}_{tuple(lam)} has a non-dominated term {tuple(mu)}"
            if table.sign == "+" and c.min_degree() < 1:
                return f"b+_{tuple(lam)} coefficient {c} not in vZ[v]"
            if table.sign == "-" and c.max_degree() > -1:
                return f"b-_{tuple(lam)} coefficient {c} not in v^-1 Z[v^-1]"
        if not fock.is_bar_invariant(table.vector(lam), n):
            return f"b{table.sign}_{tuple(lam)} is not bar invariant"
    if table.sign == "+" and not table.is_positive():
        return "b+ has a negative coefficient"
    return None


def check_canonical(n: int, max_size: int = 6, extensions: int = 3, seed: int = 0) -> CheckResult:
    def body():
        rng = random.Random(seed)
        for N in range(max_size + 1):
            for sign in "+-":
                table = fock.canonical_basis(n, N, sign)
                err = canonical_report(table, n)
                if err:
                    return False, f"N={N}: {err}"
                for _ in range(extensions):
                    order = fock.random_extension(N, table.direction, rng)
                    other = fock.canonical_basis(n, N, sign, order=order)
                    if other.vectors != table.vectors:
                        return False, f"N={N}, sign {sign}: depends on the linear extension"
        return True, f"N <= {max_size}, both signs, {extensions} random extensions each"
    return _timed(f"canonical_bases[n={n}]", 7, body)


def check_ladder_route(n: int, max_size: int = 6) -> CheckResult:
    def body():
        count = 0
        for N in range(max_size + 1):
            table = fock.canonical_basis(n, N)
            for lam in partitions_of(N):
                if not is_n_regular(lam, n):
                    continue
                count += 1
                if fock.global_basis_vector(lam, n) != table.vector(lam):
                    return False, f"global basis differs from b+ at {tuple(lam)}"
        return True, f"{count} regular partitions"
    return _timed(f"ladder_route[n={n}]", 8, body)


def check_boson_vacuum(n: int, max_size: int = 6, max_mu: int = 3) -> CheckResult:
    """Schur operators keep the lattice, and shift vacuum and periodic parts by ``(-v)^(-(n-1)|mu|)``."""
    def body():
        signs = set()
        for k in range(1, max_mu + 1):
            for mu in partitions_of(k):
                for lam in _partitions_upto(max(0, max_size - n * k)):
                    if not fock.schur_lattice_bound(mu, lam, n):
                        return False, f"lattice bound fails for mu={tuple(mu)}, lam={tuple(lam)}"
                e = fock.vacuum_schur_shift(mu, n)
                if e is None:
                    return False, f"vacuum shift fails for mu={tuple(mu)}"
                signs.add(("vacuum", e // ((n - 1) * k)))
        for lam in _partitions_upto(max_size):
            reg, mu = regular_periodic_split(lam, n)
            if not mu:
                continue
            e = fock.periodic_schur_shift(lam, n)
            if e is None:
                return False, f"periodic shift fails for lam={tuple(lam)}"
            signs.add(("periodic", e // ((n - 1) * sum(mu))))
        if signs - {("vacuum", -1), ("periodic", -1)}:
            return False, f"unexpected exponent signs {sorted(signs)}"
        return True, "observed exponent -(n-1)|mu| for vacuum and periodic parts", {"signs": sorted(signs)}
    return _timed(f"boson_vacuum[n={n}]", 9, body)


LEADING_SIZES = {2: 2, 3: 1}


def check_center_leading(n: int) -> CheckResult:
    def body():
        done = []
        for k in range(1, LEADING_SIZES.get(n, 1) + 1):
            for nu in partitions_of(k):
                if not fock.schur_leading_check(nu, n):
                    return False, f"leading term of a_{tuple(nu)} is not f_(n nu)"
                done.append(tuple(nu))
        if n == 2:
            for nu in partitions_of(2):
                if not fock.schur_coproduct_check(nu, n):
                    return False, f"Delta(a_{tuple(nu)}) does not factor through LR coefficients"
        return True, f"leading terms for {done}"
    return _timed(f"center_leading[n={n}]", 9, body)


def check_theorem_chain(n: int, max_size: int = 6) -> CheckResult:
    def body():
        count = 0
        for N in range(max_size + 1):
            table = fock.canonical_basis(n, N)
            for lam in partitions_of(N):
                r = fock.theorem_chain(lam, n, table)
                count += 1
                if not r.ok:
                    return False, f"chain fails at {tuple(lam)}: {r}"
        return True, f"{count} partitions"
    return _timed(f"theorem_chain[n={n}]", 10, body)


# ---------------------------------------------------------------------------
# coproduct constants and I^m


COLUMN_SIZES = {2: 3, 3: 2}


def check_column_coproduct(n: int, max_l: int = 2) -> CheckResult:
    def body():
        checked = {"sub": 0, "quotient": 0}
        for k in range(1, COLUMN_SIZES.get(n, 1) + 1):
            ms = multisegments_of_dim(vscale(k, s_vector(n)))
            periodic = {hall.periodic_multisegment(lam, n): lam for lam in partitions_of(k)}
            for l in range(1, min(max_l, k) + 1):
                for mu in partitions_of(k - l):
                    for m in ms:
                        expect = littlewood_richardson(periodic[m], column(l), mu) if m in periodic else 0
                        for orient in checked:
                            c = hall.column_coproduct_constant(m, l, mu, orient) - LaurentPoly(expect)
                            if c and c.min_degree() < 1:
                                return False, f"{orient}: k={k} l={l} mu={tuple(mu)} m={m}"
                            checked[orient] += 1
        return True, f"constants checked {checked}"
    return _timed(f"column_coproduct[n={n}]", 11, body)


def check_I_m(n: int) -> CheckResult:
    def body():
        count = 0
        for k in range(1, COLUMN_SIZES.get(n, 1) + 1):
            ms = multisegments_of_dim(vscale(k, s_vector(n)))
            periodic = {hall.periodic_multisegment(lam, n): lam for lam in partitions_of(k)}
            for l in range(1, k + 1):
                for mu in partitions_of(k - l):
                    y = hall.periodic_multisegment(mu, n)
                    for m in ms:
                        P = hall.I_m_polynomial(m, mu, l)
                        if not P:
                            continue
                        count += 1
                        deg = hall.count_degree(P)
                        dI = hall.dim_I_formula(m, mu)
                        if deg != dI or P[-2 * deg] != 1:
                            return False, f"#I^m = {P} vs dim {dI} for m={m}, mu={tuple(mu)}, l={l}"
                        for q in (2, 3):
                            if hall.I_m_count(m, mu, l, q) != hall.count_at(P, q):
                                return False, f"count over F_{q} disagrees with the fitted polynomial"
                        diff = hall.dim_orbit(m) - hall.dim_orbit(y)
                        if diff != hall.orbit_difference_formula(m, mu):
                            return False, f"orbit dimension identity fails for m={m}, mu={tuple(mu)}"
                        eq = m in periodic and littlewood_richardson(periodic[m], column(l), mu) == 1
                        if diff < 2 * dI or (diff == 2 * dI) != eq:
                            return False, f"inequality or equality case fails for m={m}, mu={tuple(mu)}"
        for h in range(1, 4):
            for nn in range(1, 4):
                for l in range(1, 4):
                    r = hall.theta_claim_check(h, nn, l)
                    if not r.ok:
                        return False, f"theta claim: h={h} n={nn} l={l}: {r.counterexample} {r.reason}"
        return True, f"{count} nonempty I^m; theta claim for h, n, l <= 3"
    return _timed(f"orbit_counts[n={n}]", 11, body)


# ---------------------------------------------------------------------------
# Hall algebra axioms


def _random_element(rng: random.Random, d) -> hall.HallElement:
    return hall.HallElement({m: rng.randint(-2, 2) for m in multisegments_of_dim(d)})


def check_green(n: int, total: int = 4, samples: int = 12, seed: int = 0) -> CheckResult:
    def body():
        rng = random.Random(seed)
        nonzero = [d for t in range(1, total) for d in _dims(n, t)]
        for s in range(samples):
            d1 = rng.choice(nonzero)
            rest = [d for d in nonzero if sum(d) <= total - sum(d1)]
            d2 = rng.choice(rest)
            f, g = _random_element(rng, d1), _random_element(rng, d2)
            h = _random_element(rng, vadd(d1, d2))
            if not hall.green_check(f, g, h, max_dim=total):
                return False, f"Green compatibility fails in degrees {d1}, {d2}"
            rest3 = [d for d in nonzero if sum(d) <= total - sum(d1) - sum(d2)]
            if rest3:
                e = _random_element(rng, rng.choice(rest3))
                lhs = hall.multiply(hall.multiply(f, g, total), e, total)
                rhs = hall.multiply(f, hall.multiply(g, e, total), total)
                if lhs != rhs:
                    return False, f"associativity fails in degrees {d1}, {d2}"
        return True, f"{samples} random triples, total dim <= {total}"
    return _timed(f"green_associativity[n={n}]", 12, body)


def _dims(n: int, t: int):
    from .combinatorics import dim_vectors_upto
    return list(dim_vectors_upto(n, t))


# ---------------------------------------------------------------------------


CHECKS: Dict[str, Callable[..., CheckResult]] = {
    "hecke": lambda n, N: check_hecke(n),
    "straightening": lambda n, N: check_straightening(n),
    "center_element": lambda n, N: check_center_element(n, N),
    "center_dimensions": lambda n, N: check_center_dimensions(n),
    "commutator": lambda n, N: check_commutator(n, N),
    "boson_commute": lambda n, N: check_boson_commute(n, N),
    "canonical": lambda n, N: check_canonical(n, N),
    "ladder": lambda n, N: check_ladder_route(n, N),
    "boson_vacuum": lambda n, N: check_boson_vacuum(n, N),
    "center_leading": lambda n, N: check_center_leading(n),
    "chain": lambda n, N: check_theorem_chain(n, N),
    "column_coproduct": lambda n, N: check_column_coproduct(n),
    "orbit_counts": lambda n, N: check_I_m(n),
    "green": lambda n, N: check_green(n),
}


def run_checks(n: int, N: int, names: Optional[Sequence[str]] = None) -> List[CheckResult]:
    names = list(names) if names else list(CHECKS)
    unknown = [x for x in names if x not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    return [CHECKS[name](n, N) for name in names]
