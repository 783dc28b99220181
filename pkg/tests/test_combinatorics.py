import pytest
from hypothesis import given, settings, strategies as st

from fockhall.combinatorics import (
    EMPTY, CyclicSegment, Multisegment, Partition, addable_removable_nodes, decompose_periodic_aperiodic,
    dim_vector, dominance_leq, format_multisegment, is_aperiodic, is_completely_periodic, is_n_regular,
    multisegment_of_partition, multisegments_of_dim, n_stretch, parse_multisegment, partition_count,
    partitions_of, regular_periodic_split, s_vector, vscale,
)


def M(s, n=2):
    return parse_multisegment(s, n)


def test_partition_invariants():
    assert Partition((3, 1, 0)) == Partition((3, 1))
    with pytest.raises(ValueError):
        Partition((1, 2))
    assert [partition_count(k) for k in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert len(partitions_of(6)) == 11


def test_segment_normalization():
    assert CyclicSegment(5, 2, 3) == CyclicSegment(2, 2, 3)
    with pytest.raises(ValueError):
        CyclicSegment(0, 0, 2)


def test_multisegment_of_partition_examples():
    assert multisegment_of_partition((1,), 2) == M("[0;1)")
    assert multisegment_of_partition((2, 1), 2) == M("[0;2)+[1;1)")
    assert multisegment_of_partition((), 2).is_empty()


def test_dim_vector_examples():
    assert dim_vector(M("[0;2)")) == (1, 1)
    assert dim_vector(M("[0;1)+[0;1)")) == (2, 0)
    # residues 1, 0, 1
    assert dim_vector(M("[1;3)")) == (1, 2)


def test_periodic_split_examples():
    m = M("[0;1)+[1;1)")
    assert decompose_periodic_aperiodic(m) == (m, Multisegment(2))
    p, a = decompose_periodic_aperiodic(M("2[0;1)+[1;1)"))
    assert p == M("[0;1)+[1;1)") and a == M("[0;1)")
    assert decompose_periodic_aperiodic(M("[0;2)")) == (Multisegment(2), M("[0;2)"))


def test_n_regular_examples():
    assert is_n_regular((2, 1), 2)
    assert is_n_regular((), 2)
    assert not is_n_regular((1, 1, 1), 2)
    # two equal rows at n=2 give the periodic pair [0;1)+[1;1)
    assert not is_n_regular((1, 1), 2)
    assert is_completely_periodic(multisegment_of_partition((1, 1), 2))


def test_n_stretch_examples():
    assert n_stretch((2, 1), 2) == (2, 2, 1, 1)
    assert n_stretch((1,), 3) == (1, 1, 1)
    assert n_stretch((), 4) == EMPTY


def test_dominance_examples():
    assert dominance_leq((1, 1), (2,))
    assert not dominance_leq((2,), (1, 1))
    assert dominance_leq((2, 2), (3, 1))


def test_addable_removable_examples():
    assert addable_removable_nodes((), 0, 2) == ([(1, 1)], [])
    assert sorted(addable_removable_nodes((1,), 1, 2)[0]) == [(1, 2), (2, 1)]
    assert addable_removable_nodes((1,), 1, 2)[1] == []
    assert addable_removable_nodes((1,), 0, 2) == ([], [(1, 1)])


def test_format_parse_roundtrip():
    for d in [(2, 1), (1, 1, 1), (0, 3)]:
        for m in multisegments_of_dim(d):
            assert parse_multisegment(format_multisegment(m), len(d)) == m
            assert dim_vector(m) == d


@pytest.mark.parametrize("n", [2, 3])
def test_aperiodic_iff_regular(n):
    for k in range(9):
        for lam in partitions_of(k):
            assert is_aperiodic(multisegment_of_partition(lam, n)) == is_n_regular(lam, n)


@pytest.mark.parametrize("n", [2, 3])
def test_partition_map_injective(n):
    seen = {}
    for k in range(9):
        for lam in partitions_of(k):
            m = multisegment_of_partition(lam, n)
            assert m not in seen
            seen[m] = lam
            assert sum(dim_vector(m)) == k


@pytest.mark.parametrize("n", [2, 3])
def test_stretched_partitions_are_periodic(n):
    for k in range(5):
        for mu in partitions_of(k):
            m = multisegment_of_partition(n_stretch(mu, n), n)
            assert is_completely_periodic(m)
            assert dim_vector(m) == vscale(k, s_vector(n))


def test_regular_periodic_split():
    for k in range(8):
        for lam in partitions_of(k):
            reg, mu = regular_periodic_split(lam, 2)
            assert is_n_regular(reg, 2)
            assert multisegment_of_partition(lam, 2) == multisegment_of_partition(reg, 2) + multisegment_of_partition(n_stretch(mu, 2), 2)


multiseg = st.integers(2, 3).flatmap(lambda n: st.dictionaries(
    st.tuples(st.integers(0, n - 1), st.integers(1, 4)), st.integers(1, 3), max_size=5
).map(lambda d: Multisegment(n, d)))


@settings(max_examples=200, deadline=None)
@given(multiseg)
def test_decompose_then_readd(m):
    p, a = decompose_periodic_aperiodic(m)
    assert p + a == m
    assert is_completely_periodic(p) and is_aperiodic(a)
    assert len(set(dim_vector(p))) <= 1
