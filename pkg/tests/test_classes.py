import random
from itertools import permutations
from math import factorial

import pytest

from flexscheme import classes
from flexscheme.classes import (
    ResourceLimit,
    build_Y,
    count_Z,
    count_Z_filter,
    count_Z_uncached,
    is_viable,
)
from flexscheme.gaps import compositions, refinements
from flexscheme.oracle import naive_sequence
from flexscheme.perms import Basis, downfix_split

B123 = Basis([(1, 2, 3)])
SMALL_BASES = [Basis.parse(t) for t in ["123", "132", "123;321", "1423;2314", "2413;3142", "1234"]]


def vectors(length, max_norm):
    for total in range(max_norm + 1):
        yield from compositions(length, total)


def test_build_Y_example():
    assert build_Y((1, 2), (2, 1, 0)) == {
        (3, 4, 1, 5, 2), (3, 5, 1, 4, 2), (4, 3, 1, 5, 2),
        (4, 5, 1, 3, 2), (5, 3, 1, 4, 2), (5, 4, 1, 3, 2),
    }
    assert build_Y((2, 1, 3), (0, 0, 0, 0)) == {(2, 1, 3)}
    assert len(build_Y((2, 1), (1, 1, 1))) == 6


def test_Y_members_have_the_right_downfix():
    for pi in permutations(range(1, 4)):
        for g in vectors(4, 3):
            ys = build_Y(pi, g)
            assert len(ys) == factorial(sum(g))
            for s in ys:
                assert downfix_split(s, 3) == (pi, g)


def test_count_Z_examples():
    assert count_Z(B123, (1, 2), (2, 1, 0)) == 5
    assert count_Z(B123, (1, 2), (0, 0, 1)) == 0
    assert count_Z(Basis(), (2, 1), (2, 1, 1)) == factorial(4)


def test_viability_examples():
    assert is_viable(B123, (1, 2), (2, 1, 0))
    assert not is_viable(B123, (1, 2), (0, 0, 1))
    assert not is_viable(Basis([(1, 2)]), (1, 2), (0, 0, 0))


def test_cap_is_enforced():
    with pytest.raises(ResourceLimit):
        count_Z(B123, (), (11,))
    old = classes.get_cap()
    classes.set_cap(3)
    try:
        with pytest.raises(ResourceLimit):
            build_Y((1,), (2, 2))
    finally:
        classes.set_cap(old)


@pytest.mark.parametrize("basis", SMALL_BASES, ids=str)
def test_pruned_count_matches_filter(basis):
    for k in range(4):
        for pi in permutations(range(1, k + 1)):
            for g in vectors(k + 1, 4):
                assert count_Z_uncached(basis, pi, g) == count_Z_filter(basis, pi, g)


def test_cache_is_transparent():
    classes.clear_cache()
    rng = random.Random(7)
    for _ in range(200):
        basis = rng.choice(SMALL_BASES)
        k = rng.randint(0, 3)
        pi = tuple(rng.sample(range(1, k + 1), k))
        g = tuple(rng.randint(0, 2) for _ in range(k + 1))
        first = count_Z(basis, pi, g)
        assert count_Z(basis, pi, g) == first == count_Z_uncached(basis, pi, g)


@pytest.mark.parametrize("basis", SMALL_BASES, ids=str)
def test_viability_is_downward_closed(basis):
    for k in range(4):
        for pi in permutations(range(1, k + 1)):
            for g in vectors(k + 1, 4):
                if not is_viable(basis, pi, g):
                    continue
                for i, gi in enumerate(g):
                    if gi:
                        smaller = g[:i] + (gi - 1,) + g[i + 1:]
                        assert is_viable(basis, pi, smaller)


@pytest.mark.parametrize("basis", SMALL_BASES, ids=str)
def test_partition_identity(basis):
    truth = naive_sequence(basis, 7).terms
    for n in range(8):
        for l in range(min(n, 3) + 1):
            total = sum(
                count_Z(basis, pi, g)
                for pi in permutations(range(1, l + 1))
                for g in compositions(l + 1, n - l)
            )
            assert total == truth[n]


def test_refinement_recurrence_random():
    rng = random.Random(2024)
    for _ in range(20):
        basis = rng.choice(SMALL_BASES)
        k = rng.randint(0, 3)
        pi = tuple(rng.sample(range(1, k + 1), k))
        g = [0] * (k + 1)
        for _ in range(rng.randint(1, 4)):
            g[rng.randrange(k + 1)] += 1
        g = tuple(g)
        assert count_Z(basis, pi, g) == sum(count_Z(basis, *child) for child in refinements(pi, g))
