import itertools

import numpy as np

import pytest

from basistype.errors import ArithmeticOverflow
from basistype.lattice import BOTTOM, TOP, ext_join, ext_leq, ext_meet, is_top, join, leq, meet
from basistype.ranks import BasisType as T

TYPES = [T(n, k) for n in range(1, 13) for k in range(1, 13)]
EXT = TYPES + [TOP]


@pytest.mark.parametrize(
    "a,b,expected", [((1, 2), (2, 6), True), ((2, 2), (3, 3), False), ((3, 4), (3, 4), True), ((2, 2), (1, 4), False)]
)
def test_leq_examples(a, b, expected):
    assert leq(T(*a), T(*b)) is expected


@pytest.mark.parametrize("a,b,expected", [((1, 2), (2, 3), (2, 6)), ((1, 1), (5, 4), (5, 4)), ((3, 4), (2, 6), (3, 12))])
def test_join_examples(a, b, expected):
    assert join(T(*a), T(*b)) == T(*expected)


@pytest.mark.parametrize("a,b,expected", [((2, 4), (3, 6), (2, 2)), ((1, 1), (7, 9), (1, 1)), ((1, 2), (2, 3), (1, 1))])
def test_meet_examples(a, b, expected):
    assert meet(T(*a), T(*b)) == T(*expected)


def test_join_overflow():
    p, q = 2**61 - 1, 2**31 - 1  # coprime, product beyond int64
    with pytest.raises(ArithmeticOverflow):
        join(T(1, p), T(1, q))


def test_ext_examples():
    assert ext_join(TOP, T(1, 2)) is TOP
    assert ext_join(T(1, 2), TOP) is TOP
    assert ext_meet(TOP, T(1, 2)) == T(1, 2)
    assert ext_leq(T(2, 3), TOP)
    assert not ext_leq(TOP, T(2, 3))
    assert ext_leq(TOP, TOP)
    assert is_top(TOP) and not is_top(BOTTOM)


def test_bottom_is_unique_minimum():
    assert all(leq(BOTTOM, t) for t in TYPES)
    assert [t for t in TYPES if all(leq(t, s) for s in TYPES)] == [BOTTOM]


def _laws(elems, j, m, le):
    for a, b in itertools.product(elems, repeat=2):
        assert j(a, b) == j(b, a)
        assert m(a, b) == m(b, a)
        assert j(a, m(a, b)) == a
        assert m(a, j(a, b)) == a
        assert le(a, b) == (j(a, b) == b) == (m(a, b) == a)
    for a in elems:
        assert j(a, a) == a and m(a, a) == a and le(a, a)


def _index_table(rows, cols, op, universe):
    index = {e: i for i, e in enumerate(universe)}
    return np.array([[index[op(a, b)] for b in cols] for a in rows], dtype=np.int64)


# N <= 12 and K dividing lcm(1..12): closed under join and meet
UNIVERSE = [T(n, k) for n in range(1, 13) for k in range(1, 27721) if 27720 % k == 0]


def test_lattice_associativity_exhaustive():
    box = np.array([UNIVERSE.index(t) for t in TYPES])
    for op in (join, meet):
        # table[u, c] = op(UNIVERSE[u], TYPES[c]); commutativity is checked separately
        table = _index_table(UNIVERSE, TYPES, op, UNIVERSE)
        pair = table[box]  # pair[a, b] = op(a, b) as a universe index
        left = table[pair]  # op(op(a, b), c)
        # right[a, b, c] = op(op(b, c), a) = op(a, op(b, c))
        right = table[pair[None, :, :], np.arange(len(TYPES))[:, None, None]]
        assert np.array_equal(left, right)


def test_extended_lattice_laws():
    _laws(EXT, ext_join, ext_meet, ext_leq)
    for a, b, c in itertools.product(TYPES[::11] + [TOP], repeat=3):
        assert ext_join(ext_join(a, b), c) == ext_join(a, ext_join(b, c))
        assert ext_meet(ext_meet(a, b), c) == ext_meet(a, ext_meet(b, c))


def test_join_is_least_upper_bound():
    small = [T(n, k) for n in range(1, 7) for k in range(1, 7)]
    for a, b in itertools.product(small, repeat=2):
        j = join(a, b)
        assert leq(a, j) and leq(b, j)
        for c in TYPES:
            if leq(a, c) and leq(b, c):
                assert leq(j, c)
