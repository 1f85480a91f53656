"""Brute-force enumeration of avoidance classes.

Two deliberately independent routes: growing avoiders one maximum at a time,
and filtering every permutation of [n]. Both stay simple on purpose; they are
what every scheme is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

from .classes import ResourceLimit
from .perms import Basis, Perm, contains_through

ORACLE_CAP = 10


@dataclass(frozen=True)
class EnumSequence:
    basis: Basis
    terms: tuple[int, ...]

    def __post_init__(self):
        if self.terms and self.terms[0] != 1:
            raise ValueError("term 0 must be 1")


def _check_cap(n_max: int, cap: int | None) -> None:
    cap = ORACLE_CAP if cap is None else cap
    if n_max > cap:
        raise ResourceLimit(f"n_max {n_max} exceeds oracle cap {cap}")


def avoiders(basis: Basis, n_max: int, cap: int | None = None) -> list[list[Perm]]:
    """Avoiders of each length 0..n_max, by inserting the new maximum everywhere."""
    _check_cap(n_max, cap)
    levels: list[list[Perm]] = [[()]]
    for n in range(1, n_max + 1):
        nxt = []
        for p in levels[-1]:
            for i in range(n):
                q = p[:i] + (n,) + p[i:]
                if not any(contains_through(q, b, i) for b in basis):
                    nxt.append(q)
        levels.append(nxt)
    return levels


def brute_sequence(basis: Basis, n_max: int, cap: int | None = None) -> EnumSequence:
    return EnumSequence(basis, tuple(len(level) for level in avoiders(basis, n_max, cap)))


def _naive_contains(sigma: Sequence[int], p: Sequence[int]) -> bool:
    k = len(p)
    for idx in combinations(range(len(sigma)), k):
        sub = [sigma[i] for i in idx]
        if all((sub[a] < sub[b]) == (p[a] < p[b]) for a in range(k) for b in range(a + 1, k)):
            return True
    return False


def naive_sequence(basis: Basis, n_max: int) -> EnumSequence:
    """Filter all n! permutations; only sensible for n_max <= 8."""
    if n_max > 8:
        raise ResourceLimit("naive oracle is limited to n_max <= 8")
    terms = []
    for n in range(n_max + 1):
        terms.append(
            sum(
                1
                for s in permutations(range(1, n + 1))
                if not any(_naive_contains(s, b) for b in basis)
            )
        )
    return EnumSequence(basis, tuple(terms))
