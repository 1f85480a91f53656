"""Pattern families and the per-symmetry-class discovery census."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator

from .discovery import SearchBounds, discover
from .perms import SYMMETRIES, Basis, Perm, apply_word, format_perm


def parse_family(text: str) -> tuple[int, ...]:
    """``"4,4"`` -> (4, 4): one pattern per listed length."""
    try:
        lengths = tuple(sorted(int(x) for x in text.replace("[", "").replace("]", "").split(",") if x.strip()))
    except ValueError:
        raise ValueError(f"bad family {text!r}") from None
    if not lengths or min(lengths) < 1:
        raise ValueError(f"bad family {text!r}")
    return lengths


def family_pattern_sets(lengths: tuple[int, ...]) -> Iterator[tuple[Perm, ...]]:
    """Every set of distinct patterns with the given lengths, as a sorted tuple."""
    groups = []
    for k in sorted(set(lengths)):
        pool = list(permutations(range(1, k + 1)))
        groups.append(list(combinations(pool, lengths.count(k))))
    for choice in product(*groups):
        yield tuple(p for group in choice for p in group)


def _canonical_set(pats: tuple[Perm, ...]) -> tuple[Perm, ...]:
    return min(
        tuple(sorted((apply_word(p, w) for p in pats), key=lambda q: (len(q), q)))
        for w in SYMMETRIES
    )


def symmetry_classes(lengths: tuple[int, ...]) -> list[Basis]:
    """One basis per symmetry class of the family, in canonical order.

    Classes are orbits of the raw pattern sets, so a set where one pattern
    contains another still counts as its own class even though its basis
    shrinks to the smaller pattern.
    """
    reps = sorted({_canonical_set(s) for s in family_pattern_sets(lengths)})
    return [Basis(s) for s in reps]


@dataclass
class CensusRow:
    representative: Basis
    es: str
    fs: str
    depth: int | None
    seconds: float

    def as_dict(self) -> dict:
        return {
            "class": self.representative.texts(),
            "es": self.es,
            "fs": self.fs,
            "depth": self.depth,
            "time": round(self.seconds, 3),
        }


def census_one(basis: Basis, bounds: SearchBounds, try_symmetries: bool = True) -> CensusRow:
    start = time.monotonic()
    es = discover(basis, bounds, "ES", try_symmetries)
    fs = discover(basis, bounds, "FS", try_symmetries)
    depth = fs.scheme.depth if fs.ok else None
    return CensusRow(basis, es.status, fs.status, depth, time.monotonic() - start)


def run_census(
    lengths: tuple[int, ...],
    bounds: SearchBounds,
    try_symmetries: bool = True,
    jobs: int = 1,
) -> Iterator[CensusRow]:
    """Yield one row per symmetry class, in canonical order."""
    reps = symmetry_classes(lengths)
    if jobs <= 1:
        for b in reps:
            yield census_one(b, bounds, try_symmetries)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(census_one, b, bounds, try_symmetries) for b in reps]
        for f in futures:
            yield f.result()


def summarize(lengths: tuple[int, ...], rows: list[CensusRow]) -> dict:
    return {
        "family": "".join(f"[{k}]" for k in lengths),
        "sym_classes": len(rows),
        "es": sum(r.es == "success" for r in rows),
        "fs": sum(r.fs == "success" for r in rows),
        "fs_only": sum(r.fs == "success" and r.es != "success" for r in rows),
        "timeouts": sum("timeout" in (r.es, r.fs) for r in rows),
    }


def describe(basis: Basis) -> str:
    return "{" + ",".join(format_perm(p) for p in basis) + "}"
