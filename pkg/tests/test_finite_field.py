import pytest

from fockhall.finite_field import field, gl_order, grassmannian_size

QS = [2, 3, 4, 5, 7, 8, 9]


@pytest.mark.parametrize("q", QS)
def test_field_axioms(q):
    F = field(q)
    els = range(q)
    for a in els:
        assert F.add[a][0] == a and F.mul[a][1] == a
        assert F.add[a][F.neg[a]] == 0
        if a:
            assert F.mul[a][F.inv[a]] == 1
        for b in els:
            assert F.add[a][b] == F.add[b][a]
            assert F.mul[a][b] == F.mul[b][a]
            for c in els:
                assert F.mul[a][F.add[b][c]] == F.add[F.mul[a][b]][F.mul[a][c]]
                assert F.mul[F.mul[a][b]][c] == F.mul[a][F.mul[b][c]]


@pytest.mark.parametrize("q", [2, 3, 4])
def test_subspace_counts(q):
    F = field(q)
    for d in range(4):
        for k in range(d + 1):
            subs = list(F.subspaces(k, d))
            assert len(subs) == grassmannian_size(k, d, q)
            assert len(set(subs)) == len(subs)
            assert all(F.rank(s) == k for s in subs)


def test_gl_order():
    assert gl_order(1, 2) == 1
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48


def test_rejects_non_prime_powers():
    for q in (1, 6, 12):
        with pytest.raises(ValueError):
            field(q)
