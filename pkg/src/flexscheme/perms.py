"""Permutations, pattern containment, downfixes and the symmetries of pattern sets.

Permutations are plain tuples of ints in one-line notation, 1-based values.
The empty tuple is the empty permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Perm = tuple[int, ...]

SYMMETRY_GENERATORS = ("reverse", "complement", "inverse")


class InvalidInput(ValueError):
    """Raised for malformed permutations, gap vectors or indices."""


def perm(values: Iterable[int]) -> Perm:
    """Validate ``values`` as a permutation of 1..n and return it as a tuple."""
    p = tuple(int(v) for v in values)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise InvalidInput(f"{p} is not a permutation of 1..{len(p)}")
    return p


def parse_perm(text: str) -> Perm:
    """Parse ``"24513"`` or ``"2,4,5,1,3"``."""
    text = text.strip()
    if not text:
        raise InvalidInput("empty permutation text")
    if "," in text:
        parts = [s for s in text.split(",")]
        try:
            return perm(int(s) for s in parts)
        except ValueError as exc:
            raise InvalidInput(f"bad permutation {text!r}") from exc
    if not text.isdigit():
        raise InvalidInput(f"bad permutation {text!r}")
    return perm(int(c) for c in text)


def format_perm(p: Sequence[int]) -> str:
    if len(p) <= 9:
        return "".join(str(v) for v in p)
    return ",".join(str(v) for v in p)


def reduce(seq: Sequence[int]) -> Perm:
    """Relabel distinct values as 1..k keeping their relative order."""
    ranks = {v: i for i, v in enumerate(sorted(seq), 1)}
    if len(ranks) != len(seq):
        raise InvalidInput(f"duplicate values in {tuple(seq)}")
    return tuple(ranks[v] for v in seq)


@lru_cache(maxsize=None)
def _matcher(p: Perm) -> tuple[tuple[int, ...], tuple[int, ...]]:
    # For each pattern position t: the earlier position holding the largest
    # smaller value and the one holding the smallest larger value (-1 if none).
    below, above = [], []
    for t, v in enumerate(p):
        lo = hi = -1
        for s in range(t):
            if p[s] < v and (lo < 0 or p[s] > p[lo]):
                lo = s
            if p[s] > v and (hi < 0 or p[s] < p[hi]):
                hi = s
        below.append(lo)
        above.append(hi)
    return tuple(below), tuple(above)


def _occurs(sigma: Sequence[int], p: Perm, fixed: int = -1) -> bool:
    # Backtracking embedding of p into sigma. With fixed >= 0, the maximum of
    # p is pinned to position ``fixed`` of sigma.
    k, n = len(p), len(sigma)
    if k == 0:
        return True
    if k > n:
        return False
    below, above = _matcher(p)
    top = p.index(k) if fixed >= 0 else -1
    matched = [0] * k

    def extend(t: int, start: int) -> bool:
        if t == k:
            return True
        lo = matched[below[t]] if below[t] >= 0 else 0
        hi = matched[above[t]] if above[t] >= 0 else 1 << 30
        if t == top:
            v = sigma[fixed]
            if fixed < start or not lo < v < hi:
                return False
            matched[t] = v
            return extend(t + 1, fixed + 1)
        stop = n - (k - t) + 1
        if 0 <= fixed and t < top:
            stop = min(stop, fixed - (top - t) + 1)
        for i in range(start, stop):
            v = sigma[i]
            if lo < v < hi:
                matched[t] = v
                if extend(t + 1, i + 1):
                    return True
        return False

    return extend(0, 0)


def contains(sigma: Sequence[int], p: Sequence[int]) -> bool:
    """True iff some subsequence of ``sigma`` reduces to ``p``."""
    return _occurs(sigma, tuple(p))


def contains_through(sigma: Sequence[int], p: Sequence[int], pos: int) -> bool:
    """True iff ``p`` occurs in ``sigma`` with its maximum at position ``pos`` (0-based).

    When sigma[pos] is the maximum of sigma and sigma without it avoids p,
    this decides containment of p in sigma.
    """
    return _occurs(sigma, tuple(p), pos)


@dataclass(frozen=True)
class Basis:
    """A finite set of forbidden patterns, kept minimal and canonically ordered."""

    patterns: tuple[Perm, ...]

    def __init__(self, patterns: Iterable[Sequence[int]] = ()):
        ps = sorted({perm(p) for p in patterns}, key=lambda q: (len(q), q))
        if any(len(q) == 0 for q in ps):
            raise InvalidInput("basis patterns must be non-empty")
        kept: list[Perm] = []
        for q in ps:
            if not any(contains(q, b) for b in kept):
                kept.append(q)
        object.__setattr__(self, "patterns", tuple(kept))

    @classmethod
    def parse(cls, text: str) -> Basis:
        parts = [s for s in text.replace(" ", "").split(";") if s]
        if not parts:
            raise InvalidInput("empty basis")
        return cls(parse_perm(s) for s in parts)

    @property
    def max_length(self) -> int:
        return max((len(q) for q in self.patterns), default=0)

    def sort_key(self) -> tuple:
        return tuple((len(q), q) for q in self.patterns)

    def __lt__(self, other: Basis) -> bool:
        return self.sort_key() < other.sort_key()

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self) -> int:
        return len(self.patterns)

    def __str__(self) -> str:
        return ";".join(format_perm(q) for q in self.patterns)

    def texts(self) -> list[str]:
        return [format_perm(q) for q in self.patterns]


def avoids_all(sigma: Sequence[int], basis: Iterable[Sequence[int]]) -> bool:
    return not any(contains(sigma, b) for b in basis)


def downfix_split(sigma: Sequence[int], l: int) -> tuple[Perm, tuple[int, ...]]:
    """Return the downfix of values <= l and its gap vector."""
    n = len(sigma)
    if not 0 <= l <= n:
        raise InvalidInput(f"downfix length {l} out of range 0..{n}")
    positions = [i for i, v in enumerate(sigma, 1) if v <= l]
    down = tuple(sigma[i - 1] for i in positions)
    edges = [0] + positions + [n + 1]
    gaps = tuple(edges[k + 1] - edges[k] - 1 for k in range(l + 1))
    return down, gaps


def apply_symmetry(p: Sequence[int], op: str) -> Perm:
    n = len(p)
    if op == "reverse":
        return tuple(reversed(p))
    if op == "complement":
        return tuple(n + 1 - v for v in p)
    if op == "inverse":
        inv = [0] * n
        for i, v in enumerate(p, 1):
            inv[v - 1] = i
        return tuple(inv)
    raise InvalidInput(f"unknown symmetry {op!r}")


# The eight elements of the symmetry group, as words in the generators.
SYMMETRIES: tuple[tuple[str, ...], ...] = (
    (),
    ("reverse",),
    ("complement",),
    ("reverse", "complement"),
    ("inverse",),
    ("inverse", "reverse"),
    ("inverse", "complement"),
    ("inverse", "reverse", "complement"),
)


def apply_word(p: Perm, word: tuple[str, ...]) -> Perm:
    for op in word:
        p = apply_symmetry(p, op)
    return p


def symmetry_class(basis: Basis) -> tuple[list[Basis], Basis]:
    """All distinct images of ``basis`` under the 8 symmetries, plus the least one."""
    images = {Basis(apply_word(q, w) for q in basis) for w in SYMMETRIES}
    members = sorted(images)
    return members, members[0]
