"""Automatic discovery of flexible schemes.

Downfixes are explored breadth-first. For each one we look for an ordered
list of gap conditions, each paired either with 0 (no avoiders satisfy it) or
with a downfix position whose deletion preserves the count of avoiders on the
part of the lattice the condition claims. A claim is certified by checking
every gap vector up to a finite norm, which is enough to cover all of them.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .classes import count_Z
from .gaps import (
    Gaps,
    conditions_up_to,
    delete,
    dominated_by,
    is_zero,
    norm,
    refined_downfixes,
    satisfies,
)
from .perms import Basis, Perm, avoids_all, format_perm, symmetry_class
from .scheme import Case, Rule, Scheme, validate

MODES = ("FS", "ES")


@dataclass(frozen=True)
class SearchBounds:
    max_depth: int = 8
    max_gap_norm: int = 2
    time_budget: float | None = None

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if self.max_gap_norm < 0:
            raise ValueError("max_gap_norm must be non-negative")


@dataclass
class DiscoveryOutcome:
    """Result of :func:`discover`.

    ``status`` is ``"success"``, ``"failure"`` (bounds exhausted) or
    ``"timeout"``. On failure, ``frontier`` lists every downfix left without a
    rule (expanded into refinements) and ``failed_at`` the downfix at maximum
    depth that stopped the search.
    """

    status: str
    basis: Basis
    bounds: SearchBounds
    mode: str
    scheme: Scheme | None = None
    frontier: list[Perm] = field(default_factory=list)
    failed_at: Perm | None = None
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "success"

    def report(self) -> dict:
        return {
            "status": self.status,
            "basis": self.basis.texts(),
            "mode": self.mode,
            "bounds": {
                "max_depth": self.bounds.max_depth,
                "max_gap_norm": self.bounds.max_gap_norm,
                "time_budget": self.bounds.time_budget,
            },
            "frontier": [format_perm(p) for p in self.frontier],
            "failed_at": None if self.failed_at is None else format_perm(self.failed_at),
            "wall_time": round(self.elapsed, 3),
        }


class _Timeout(Exception):
    pass


def nonviable(basis: Basis, pi: Perm, h: Gaps) -> bool:
    """True iff no avoider has downfix ``pi`` and a gap vector satisfying ``h``.

    Viable gap vectors are closed downwards, so emptiness at ``h`` itself
    settles every gap vector above it.
    """
    return count_Z(basis, pi, h) == 0


def certified_norm(basis: Basis, h: Sequence[int]) -> int:
    return basis.max_length - 1 + norm(h)


def region(basis: Basis, h: Gaps, priors: Sequence[Gaps]) -> Iterator[Gaps]:
    """Gap vectors satisfying ``h`` but none of ``priors``, up to the certified norm."""
    for g in dominated_by(h, certified_norm(basis, h)):
        if not any(satisfies(g, p) for p in priors):
            yield g


def verify_case(basis: Basis, pi: Perm, h: Gaps, priors: Sequence[Gaps], r: int) -> bool:
    """Check that deleting position ``r`` preserves avoider counts on the region of ``h``."""
    for g in region(basis, h, priors):
        if count_Z(basis, pi, g) != count_Z(basis, *delete(pi, g, r)):
            return False
    return True


def candidate_conditions(length: int, max_gap_norm: int) -> list[Gaps]:
    """Non-zero conditions in search order: lowest norm first, then descending lex."""
    return sorted((h for h in conditions_up_to(length, max_gap_norm) if not is_zero(h)), key=norm)


def find_rule(
    basis: Basis,
    pi: Perm,
    max_gap_norm: int,
    mode: str = "FS",
    deadline: float | None = None,
) -> tuple[Case, ...] | None:
    """Search for an ordered case list reducing ``pi``; ``None`` if there is none within bounds.

    After every accepted case the all-zeros condition is tried against the
    cases so far, so rules stay as short as the search order allows. In ES
    mode only emptiness cases may precede the final deletion.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    zero = (0,) * (len(pi) + 1)
    if nonviable(basis, pi, zero):
        return (Case(zero, 0),)
    accepted: list[Case] = []

    def close() -> tuple[Case, ...] | None:
        priors = [c.condition for c in accepted]
        for r in range(1, len(pi) + 1):
            if verify_case(basis, pi, zero, priors, r):
                return tuple(accepted) + (Case(zero, r),)
        return None

    done = close()
    if done:
        return done
    # Accepting a case only shrinks the regions later candidates must cover,
    # so rejected candidates are retried until a full pass accepts nothing.
    pending = candidate_conditions(len(pi) + 1, max_gap_norm)
    progress = True
    while progress:
        progress = False
        rejected = []
        for h in pending:
            if deadline is not None and time.monotonic() > deadline:
                raise _Timeout
            if any(satisfies(h, c.condition) for c in accepted):
                continue
            if nonviable(basis, pi, h):
                accepted.append(Case(h, 0))
            elif mode == "FS":
                priors = [c.condition for c in accepted]
                r = next((r for r in range(1, len(pi) + 1) if verify_case(basis, pi, h, priors, r)), 0)
                if not r:
                    rejected.append(h)
                    continue
                accepted.append(Case(h, r))
            else:
                continue
            progress = True
            done = close()
            if done:
                return done
        pending = rejected
    return None


def _discover_one(basis: Basis, bounds: SearchBounds, mode: str, deadline: float | None) -> DiscoveryOutcome:
    start = time.monotonic()
    rules: dict[Perm, Rule] = {(): Rule(())}
    frontier: list[Perm] = []
    queue: list[tuple[int, Perm]] = [(1, (1,))]

    def outcome(status: str, **kw) -> DiscoveryOutcome:
        return DiscoveryOutcome(
            status, basis, bounds, mode, frontier=frontier,
            elapsed=time.monotonic() - start, **kw,
        )

    try:
        while queue:
            _, pi = heapq.heappop(queue)
            if pi in rules:
                continue
            if not avoids_all(pi, basis):
                rules[pi] = Rule(pi, (Case((0,) * (len(pi) + 1), 0),))
                continue
            cases = find_rule(basis, pi, bounds.max_gap_norm, mode, deadline)
            if cases is not None:
                rules[pi] = Rule(pi, cases)
                for c in cases:
                    if c.action:
                        target = delete(pi, c.condition, c.action)[0]
                        if target not in rules:
                            heapq.heappush(queue, (len(target), target))
                continue
            frontier.append(pi)
            if len(pi) >= bounds.max_depth:
                return outcome("failure", failed_at=pi)
            rules[pi] = Rule(pi)
            for child in refined_downfixes(pi):
                if child not in rules:
                    heapq.heappush(queue, (len(child), child))
    except _Timeout:
        return outcome("timeout")

    scheme = Scheme(basis, rules, bounds.max_gap_norm)
    problems = validate(scheme)
    if problems:
        raise AssertionError(f"discovered scheme is malformed: {problems}")
    return outcome("success", scheme=scheme)


def discover(
    basis: Basis,
    bounds: SearchBounds = SearchBounds(),
    mode: str = "FS",
    try_symmetries: bool = False,
) -> DiscoveryOutcome:
    """Search for a scheme for ``basis``.

    With ``try_symmetries``, every symmetric image of the basis is tried in
    canonical order and the first success is returned; its scheme is for the
    image, which has the same enumeration.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    deadline = None if bounds.time_budget is None else time.monotonic() + bounds.time_budget
    candidates = [basis]
    if try_symmetries:
        members, _ = symmetry_class(basis)
        candidates += [b for b in members if b != basis]
    first = None
    for b in candidates:
        result = _discover_one(b, bounds, mode, deadline)
        if result.ok or result.status == "timeout":
            return result
        first = first or result
    return first
