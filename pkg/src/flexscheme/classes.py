"""Bounded brute-force access to Y(pi, g) and Z(B, pi, g).

Y(pi, g) is every permutation whose downfix is ``pi`` with gap vector ``g``;
Z(B, pi, g) keeps only those avoiding the basis ``B``.
"""

from __future__ import annotations

import os
import threading
from itertools import permutations
from typing import Iterator

from .gaps import Gaps
from .perms import Basis, InvalidInput, Perm, avoids_all, contains, contains_through

DEFAULT_CAP = int(os.environ.get("FLEXSCHEME_Y_CAP", "10"))


class ResourceLimit(RuntimeError):
    """A brute-force enumeration would exceed its configured size cap."""


_cap = DEFAULT_CAP
_cache: dict[tuple[Basis, Perm, Gaps], int] = {}
_cache_lock = threading.Lock()


def set_cap(cap: int) -> None:
    """Set the largest gap norm the brute-force routines will enumerate."""
    global _cap
    _cap = cap


def get_cap() -> int:
    return _cap


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def cache_size() -> int:
    return len(_cache)


def _layout(pi: Perm, g: Gaps) -> tuple[list[int], list[int]]:
    # Skeleton of length n with the downfix placed, and the free positions.
    if len(g) != len(pi) + 1:
        raise InvalidInput(f"gap vector {g} does not fit downfix {pi}")
    if any(x < 0 for x in g):
        raise InvalidInput(f"negative gap in {g}")
    m = sum(g)
    if m > _cap:
        raise ResourceLimit(f"gap norm {m} exceeds cap {_cap}")
    skeleton: list[int] = []
    free: list[int] = []
    for k, size in enumerate(g):
        for _ in range(size):
            free.append(len(skeleton))
            skeleton.append(0)
        if k < len(pi):
            skeleton.append(pi[k])
    return skeleton, free


def iter_Y(pi: Perm, g: Gaps) -> Iterator[Perm]:
    skeleton, free = _layout(tuple(pi), tuple(g))
    low = len(pi)
    for order in permutations(range(low + 1, low + len(free) + 1)):
        for pos, v in zip(free, order):
            skeleton[pos] = v
        yield tuple(skeleton)


def build_Y(pi: Perm, g: Gaps) -> set[Perm]:
    return set(iter_Y(pi, g))


def _count_avoiders(basis: Basis, pi: Perm, g: Gaps) -> int:
    skeleton, free = _layout(pi, g)
    if not avoids_all(pi, basis):
        return 0
    m = len(free)
    if m == 0:
        return 1
    patterns = basis.patterns
    filled = [False] * len(skeleton)
    for k, v in enumerate(skeleton):
        filled[k] = v > 0
    # ``partial`` is the permutation restricted to values placed so far; each
    # new value is the current maximum, so only occurrences through it matter.
    partial = list(pi)
    total = 0

    def place(v: int) -> None:
        nonlocal total
        if v > len(skeleton):
            total += 1
            return
        for pos in free:
            if filled[pos]:
                continue
            idx = sum(filled[:pos])
            partial.insert(idx, v)
            if not any(contains_through(partial, b, idx) for b in patterns):
                filled[pos] = True
                place(v + 1)
                filled[pos] = False
            del partial[idx]

    place(len(pi) + 1)
    return total


def count_Z(basis: Basis, pi: Perm, g: Gaps) -> int:
    """Number of basis-avoiders in Y(pi, g). Cached per (basis, pi, g)."""
    key = (basis, tuple(pi), tuple(g))
    hit = _cache.get(key)
    if hit is not None:
        return hit
    value = _count_avoiders(basis, key[1], key[2])
    with _cache_lock:
        _cache[key] = value
    return value


def count_Z_uncached(basis: Basis, pi: Perm, g: Gaps) -> int:
    return _count_avoiders(basis, tuple(pi), tuple(g))


def count_Z_filter(basis: Basis, pi: Perm, g: Gaps) -> int:
    """Reference count: materialize Y and test every member."""
    return sum(1 for s in iter_Y(pi, g) if not any(contains(s, b) for b in basis))


def is_viable(basis: Basis, pi: Perm, g: Gaps) -> bool:
    return count_Z(basis, pi, g) > 0
