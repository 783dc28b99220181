import random

import pytest

from fockhall import fock
from fockhall.combinatorics import (
    Multisegment, Partition, dominance_leq, is_n_regular, multisegment_of_partition, n_stretch, partitions_of,
)
from fockhall.fock import FockVector, boson_p, e_action, f_action, f_divided
from fockhall.laurent import ONE, LaurentPoly, quantum_factorial, quantum_integer, v_power

NS = [2, 3]
VAC = FockVector.basis(())


def upto(N):
    return [lam for k in range(N + 1) for lam in partitions_of(k)]


def random_vector(rng, N, terms=3):
    parts = partitions_of(N)
    return FockVector({rng.choice(parts): LaurentPoly({rng.randint(-2, 2): rng.choice([-1, 1, 2])}) for _ in range(terms)})


def eps(i, n):
    return tuple(int(j == i) for j in range(n))


# Chevalley generators

@pytest.mark.parametrize("n", NS)
def test_f0_on_vacuum(n):
    assert f_action(0, VAC, n) == FockVector.basis((1,))


def test_f1_on_box_two_terms():
    x = f_action(1, FockVector.basis((1,)), 2)
    assert set(x.terms) == {Partition((2,)), Partition((1, 1))}
    coeffs = sorted(x.terms.values(), key=lambda c: c.min_degree())
    assert ONE in coeffs
    other = next(c for c in coeffs if c != ONE)
    assert other in (v_power(1), v_power(-1))


@pytest.mark.parametrize("n", NS)
def test_e_f_on_vacuum(n):
    for i in range(n):
        x = e_action(i, f_action(i, VAC, n), n)
        if i == 0:
            assert x == VAC.scale(quantum_integer(1))
        else:
            assert x.is_zero()


@pytest.mark.parametrize("n", NS)
def test_chevalley_relations(n):
    # [e_i, f_j] = delta_ij [k_i] and the Serre relations, on all |lam| <= 4
    for lam in upto(4):
        x = FockVector.basis(lam)
        for i in range(n):
            for j in range(n):
                c = e_action(i, f_action(j, x, n), n) - f_action(j, e_action(i, x, n), n)
                if i != j:
                    assert c.is_zero()
                else:
                    assert c == x.scale(quantum_integer(fock.k_exponent(eps(i, n), lam, n)))
            for j in ((i + 1) % n, (i - 1) % n):
                if j == i:
                    continue
                fi = lambda y: f_action(i, y, n)
                fj = lambda y: f_action(j, y, n)
                if n == 2:
                    s = (fi(fi(fi(fj(x)))) - fi(fi(fj(fi(x)))).scale(quantum_integer(3))
                         + fi(fj(fi(fi(x)))).scale(quantum_integer(3)) - fj(fi(fi(fi(x)))))
                else:
                    s = fi(fi(fj(x))) - fi(fj(fi(x))).scale(quantum_integer(2)) + fj(fi(fi(x)))
                assert s.is_zero()


@pytest.mark.parametrize("n", NS)
def test_weight_grading(n):
    for lam in upto(4):
        x = FockVector.basis(lam)
        for i in range(n):
            assert f_action(i, x, n).degrees() <= {sum(lam) + 1}
            assert e_action(i, x, n).degrees() <= {sum(lam) - 1}
            k = fock.k_action(eps(i, n), x, n)
            assert set(k.terms) == {lam}


@pytest.mark.parametrize("n", NS)
def test_action_formulas_match_wedge(n):
    for lam in upto(4):
        for i in range(n):
            assert f_action(i, FockVector.basis(lam), n) == fock.f_action_formula(i, lam, n)
            assert e_action(i, FockVector.basis(lam), n) == fock.e_action_formula(i, lam, n)


# divided powers and f_{ks}

@pytest.mark.parametrize("n", NS)
def test_divided_powers(n):
    for i in range(n):
        assert f_divided(i, 1, VAC, n) == f_action(i, VAC, n)
        sq = f_action(i, f_action(i, VAC, n), n)
        assert f_divided(i, 2, VAC, n).scale(quantum_factorial(2)) == sq
    assert f_divided(0, 2, VAC, n).is_zero()
    x = FockVector.basis((2, 1))
    for i in range(n):
        y = f_action(i, f_action(i, f_action(i, x, n), n), n)
        assert f_divided(i, 3, x, n).scale(quantum_factorial(3)) == y


def test_f_trivial_on_vacuum():
    x = fock.f_trivial_action((1, 1), VAC, 2)
    assert not x.is_zero()
    assert x.degrees() == {2}


@pytest.mark.parametrize("n", NS)
def test_f_trivial_degree(n):
    for k in (1, 2):
        d = (k,) * n
        for lam in upto(3):
            assert fock.f_trivial_action(d, FockVector.basis(lam), n).degrees() <= {sum(lam) + k * n}


# Hall module structure

@pytest.mark.parametrize("n", NS)
def test_fm_trivial_matches_divided(n):
    for i in range(n):
        for l in (1, 2):
            m = Multisegment(n, {(i, 1): l})
            for lam in upto(3):
                x = FockVector.basis(lam)
                assert fock.fm_action(m, x, n) == f_divided(i, l, x, n)


def test_fm_single_segment_on_letter():
    # [0;2) at n=2 adds the boxes of residue 0 and 1 along a row
    x = fock.fm_action(Multisegment(2, {(0, 2): 1}), VAC, 2)
    assert x[(2,)] == ONE


@pytest.mark.parametrize("n", NS)
def test_fm_partition_leading_term(n):
    for lam in upto(4):
        if not lam:
            continue
        y = fock.fm_action(multisegment_of_partition(lam, n), VAC, n)
        assert y[lam] == ONE
        assert all(mu == lam or dominance_leq(mu, lam) for mu in y.terms)


# bosons and Schur operators

@pytest.mark.parametrize("n", NS)
def test_p1_on_vacuum_hooks(n):
    x = boson_p(1, VAC, n)
    assert len(x.terms) == n
    for lam, c in x.items():
        assert sum(lam) == n and lam[1:] == (1,) * (len(lam) - 1)
        assert len(c.coeffs) == 1 and abs(c.coeffs[c.min_degree()]) == 1


@pytest.mark.parametrize("n", NS)
def test_bosons_commute(n):
    for lam in upto(3):
        x = FockVector.basis(lam)
        assert boson_p(1, boson_p(2, x, n), n) == boson_p(2, boson_p(1, x, n), n)


@pytest.mark.parametrize("n", NS)
def test_bosons_commute_with_chevalley(n):
    for lam in upto(3):
        x = FockVector.basis(lam)
        for i in range(n):
            assert boson_p(1, f_action(i, x, n), n) == f_action(i, boson_p(1, x, n), n)
            assert boson_p(1, e_action(i, x, n), n) == e_action(i, boson_p(1, x, n), n)


@pytest.mark.parametrize("n", NS)
def test_schur_operator_identities(n):
    for lam in upto(3):
        x = FockVector.basis(lam)
        assert fock.schur_operator((1,), x, n) == boson_p(1, x, n)
        aa = fock.schur_operator((1,), fock.schur_operator((1,), x, n), n)
        assert aa == fock.schur_operator((2,), x, n) + fock.schur_operator((1, 1), x, n)


@pytest.mark.parametrize("n", NS)
def test_schur_on_vacuum_observed_sign(n):
    for k in range(1, 4):
        for mu in partitions_of(k):
            e = (n - 1) * k
            x = fock.schur_operator(mu, VAC, n)
            # the shift exponent is negative; the positive one does not occur
            assert fock.lattice_shift(x, n_stretch(mu, n), -e)
            assert not fock.lattice_shift(x, n_stretch(mu, n), e)
            assert fock.vacuum_schur_shift(mu, n) == -e


@pytest.mark.parametrize("n", NS)
def test_schur_lattice_preserving(n):
    for k in range(1, 3):
        for mu in partitions_of(k):
            for lam in upto(3):
                assert fock.schur_lattice_bound(mu, lam, n)


# bar involution

@pytest.mark.parametrize("n", NS)
def test_bar_involution(n):
    rng = random.Random(n)
    assert fock.bar_involution(VAC, n) == VAC
    for N in range(1, 5):
        x = random_vector(rng, N)
        assert fock.bar_involution(fock.bar_involution(x, n), n) == x
        for i in range(n):
            assert fock.bar_involution(f_action(i, x, n), n) == f_action(i, fock.bar_involution(x, n), n)
        y = x.scale(LaurentPoly({1: 2, -3: 1}))
        assert fock.bar_involution(y, n) == fock.bar_involution(x, n).scale(LaurentPoly({-1: 2, 3: 1}))
        assert fock.bar_involution(boson_p(1, x, n), n) == boson_p(1, fock.bar_involution(x, n), n)


# canonical bases

@pytest.mark.parametrize("n", NS)
def test_small_canonical_bases(n):
    for N in (0, 1):
        for sign in "+-":
            t = fock.canonical_basis(n, N, sign)
            for lam in t.order:
                assert t.vector(lam) == FockVector.basis(lam)


def test_canonical_n2_N2():
    t = fock.canonical_basis(2, 2, "+")
    assert t.vector((2,)) == FockVector({(2,): ONE, (1, 1): v_power(1)})
    assert t.vector((1, 1)) == FockVector.basis((1, 1))
    assert t.vector((2,)) == f_action(1, f_action(0, VAC, 2), 2)


@pytest.mark.parametrize("n", NS)
def test_canonical_properties(n):
    from fockhall.checks import canonical_report
    rng = random.Random(3)
    for N in range(5):
        for sign in "+-":
            t = fock.canonical_basis(n, N, sign)
            assert canonical_report(t, n) is None
            order = fock.random_extension(N, t.direction, rng)
            assert fock.canonical_basis(n, N, sign, order=order).vectors == t.vectors


def test_canonical_size_bound():
    with pytest.raises(ValueError):
        fock.canonical_basis(2, 9)


# crystal

@pytest.mark.parametrize("n", NS)
def test_crystal(n):
    assert fock.crystal_f(0, (), n) == (1,)
    for lam in upto(4):
        for i in range(n):
            f = fock.crystal_f(i, lam, n)
            e = fock.crystal_e(i, lam, n)
            assert f == fock.crystal_f_signature(i, lam, n)
            assert e == fock.crystal_e_signature(i, lam, n)
            if e is not None:
                assert fock.crystal_f(i, e, n) == lam
            if f is not None:
                assert fock.crystal_e(i, f, n) == lam


@pytest.mark.parametrize("n", NS)
def test_crystal_component_of_vacuum(n):
    reached = {Partition()}
    for lam in upto(4):
        if lam in reached:
            for i in range(n):
                mu = fock.crystal_f(i, lam, n)
                if mu is not None and sum(mu) <= 5:
                    reached.add(mu)
    assert reached == {lam for lam in upto(5) if is_n_regular(lam, n)}
    # the only highest weight element of the component is the vacuum
    highest = [lam for lam in reached if all(fock.crystal_e(i, lam, n) is None for i in range(n))]
    assert highest == [Partition()]


# the proof chain at small sizes

@pytest.mark.parametrize("n", NS)
def test_global_basis_equals_canonical(n):
    for N in range(5):
        t = fock.canonical_basis(n, N)
        for lam in t.order:
            if is_n_regular(lam, n):
                assert fock.global_basis_vector(lam, n) == t.vector(lam)


@pytest.mark.parametrize("n", NS)
def test_theorem_chain_small(n):
    for N in range(5):
        t = fock.canonical_basis(n, N)
        for lam in t.order:
            assert fock.theorem_chain(lam, n, t).ok
