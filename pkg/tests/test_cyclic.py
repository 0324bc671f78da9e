from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from positroids.constructions import uniform, whirl
from positroids.cyclic import (
    CyclicShiftedOrder,
    are_crossing,
    cyclic_interval,
    gale_leq,
    interval_mask,
    is_noncrossing_partition,
    lex_min_basis,
    shifted_compare,
)
from positroids.errors import LabelNotInGround, NotAPartition, UnequalCardinality

G6 = list(range(1, 7))


def crosses_by_quartets(ground, x, y):
    """Some a < b < c < d alternate between X - Y and Y - X."""
    a_only = set(x) - set(y)
    b_only = set(y) - set(x)
    for quad in combinations(sorted(ground), 4):
        w, p, q, z = quad
        if (w in a_only and q in a_only and p in b_only and z in b_only) or (
            w in b_only and q in b_only and p in a_only and z in a_only
        ):
            return True
    return False


def test_shifted_order():
    o = CyclicShiftedOrder(G6, 3)
    assert o.labels() == [3, 4, 5, 6, 1, 2]
    assert shifted_compare(o, 6, 1) == -1
    assert shifted_compare(o, 2, 3) == 1
    assert shifted_compare(o, 4, 4) == 0
    with pytest.raises(LabelNotInGround):
        CyclicShiftedOrder(G6, 9)


def test_cyclic_interval():
    assert cyclic_interval(G6, 5, 2) == frozenset(map(Fraction, [5, 6, 1, 2]))
    assert cyclic_interval(G6, 2, 4) == frozenset(map(Fraction, [2, 3, 4]))
    assert cyclic_interval(G6, 3, 3) == frozenset([Fraction(3)])


def test_interval_mask_wraps():
    assert interval_mask(6, 4, 1) == 0b110011
    assert interval_mask(6, 1, 3) == 0b001110


def test_crossing_examples():
    assert are_crossing(range(1, 5), [1, 3], [2, 4])
    assert not are_crossing(range(1, 5), [1, 2], [3, 4])
    assert not are_crossing(G6, [1, 2, 3], [3, 4, 5])  # shared 3 ignored


@settings(max_examples=300, deadline=None)
@given(st.sets(st.integers(1, 7)), st.sets(st.integers(1, 7)))
def test_crossing_matches_quartet_scan(x, y):
    ground = range(1, 8)
    assert are_crossing(ground, x, y) == crosses_by_quartets(ground, x, y)


@settings(max_examples=200, deadline=None)
@given(st.sets(st.integers(1, 7)), st.sets(st.integers(1, 7)), st.integers(0, 6))
def test_crossing_is_rotation_invariant(x, y, k):
    rot = lambda s: {(v - 1 + k) % 7 + 1 for v in s}  # noqa: E731
    assert are_crossing(range(1, 8), x, y) == are_crossing(range(1, 8), rot(x), rot(y))


def test_noncrossing_partition():
    assert is_noncrossing_partition(G6, [[1, 2, 6], [3, 4], [5]])
    assert not is_noncrossing_partition(G6, [[1, 3], [2, 4], [5, 6]])
    with pytest.raises(NotAPartition):
        is_noncrossing_partition(G6, [[1, 2], [2, 3]])


def test_gale_order():
    o3 = CyclicShiftedOrder(range(1, 5), 3)
    assert gale_leq(o3, [3, 4], [1, 2])
    o1 = CyclicShiftedOrder(range(1, 5), 1)
    assert gale_leq(o1, [1, 2], [3, 4])
    assert not gale_leq(o1, [1, 4], [2, 3])
    with pytest.raises(UnequalCardinality):
        gale_leq(o1, [1], [1, 2])


def test_lex_min_basis():
    assert lex_min_basis(whirl(2), CyclicShiftedOrder(range(1, 5), 2)) == frozenset(map(Fraction, [2, 3]))
    o = CyclicShiftedOrder(G6, 3)
    assert lex_min_basis(whirl(3), o) == frozenset(map(Fraction, [3, 4, 6]))


def test_lex_min_is_gale_min_for_uniform():
    m = uniform(3, 6)
    for start in G6:
        o = CyclicShiftedOrder(G6, start)
        j = lex_min_basis(m, o)
        assert all(gale_leq(o, j, b) for b in m.bases)
