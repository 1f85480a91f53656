"""Gap vectors, gap conditions and the deletion/refinement operators.

Both gap vectors (actual gap sizes) and gap conditions (lower bounds) are
tuples of non-negative ints; a downfix of length k pairs with k+1 gaps.
Downfix positions and gap indices are 1-based in every public function.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .perms import InvalidInput, Perm

Gaps = tuple[int, ...]


def norm(g: Sequence[int]) -> int:
    return sum(g)


def satisfies(g: Sequence[int], h: Sequence[int]) -> bool:
    """Componentwise ``g >= h``."""
    if len(g) != len(h):
        raise InvalidInput(f"length mismatch: {tuple(g)} vs {tuple(h)}")
    return all(a >= b for a, b in zip(g, h))


def _check_pair(pi: Sequence[int], g: Sequence[int]) -> None:
    if len(g) != len(pi) + 1:
        raise InvalidInput(f"gap vector {tuple(g)} does not fit downfix {tuple(pi)}")


def delete(pi: Perm, g: Gaps, r: int) -> tuple[Perm, Gaps]:
    """Remove downfix position ``r`` and merge the two gaps around it."""
    _check_pair(pi, g)
    if not 1 <= r <= len(pi):
        raise InvalidInput(f"position {r} out of range for {pi}")
    rest = pi[: r - 1] + pi[r:]
    v = pi[r - 1]
    down = tuple(x - 1 if x > v else x for x in rest)
    return down, g[: r - 1] + (g[r - 1] + g[r],) + g[r + 1 :]


def refine(pi: Perm, g: Gaps, i: int, j: int) -> tuple[Perm, Gaps]:
    """Insert ``len(pi)+1`` into gap ``i`` with ``j`` gap elements to its left.

    Gap ``i`` sits immediately before downfix position ``i``; the new element
    becomes downfix position ``i``.
    """
    _check_pair(pi, g)
    if not 1 <= i <= len(g):
        raise InvalidInput(f"gap index {i} out of range for {g}")
    if not 0 <= j < g[i - 1]:
        raise InvalidInput(f"offset {j} out of range for gap of size {g[i - 1]}")
    down = pi[: i - 1] + (len(pi) + 1,) + pi[i - 1 :]
    return down, g[: i - 1] + (j, g[i - 1] - j - 1) + g[i:]


def refinements(pi: Perm, g: Gaps) -> Iterator[tuple[Perm, Gaps]]:
    """Every ``refine(pi, g, i, j)``; one per unit of gap mass."""
    for i, gi in enumerate(g, 1):
        for j in range(gi):
            yield refine(pi, g, i, j)


def refined_downfixes(pi: Perm) -> list[Perm]:
    """All downfixes of length ``len(pi)+1`` extending ``pi``."""
    k = len(pi)
    return [pi[:i] + (k + 1,) + pi[i:] for i in range(k + 1)]


def compositions(length: int, total: int) -> Iterator[Gaps]:
    """Vectors of ``length`` non-negative ints summing to ``total``, lexicographically descending."""
    if length == 0:
        if total == 0:
            yield ()
        return
    if length == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(length - 1, total - first):
            yield (first,) + rest


def conditions_up_to(length: int, max_norm: int) -> list[Gaps]:
    """Gap conditions of ``length`` with norm <= ``max_norm``: higher norm first, then descending lex."""
    out: list[Gaps] = []
    for total in range(max_norm, -1, -1):
        out.extend(compositions(length, total))
    return out


def dominated_by(lower: Sequence[int], upper_norm: int) -> Iterator[Gaps]:
    """All ``g >= lower`` with ``norm(g) <= upper_norm``."""
    extra = upper_norm - norm(lower)
    for total in range(0, extra + 1):
        for e in compositions(len(lower), total):
            yield tuple(a + b for a, b in zip(lower, e))


def is_zero(g: Sequence[int]) -> bool:
    return not any(g)

