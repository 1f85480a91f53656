from __future__ import annotations

import random

import pytest

from flexscheme.classes import count_Z
from flexscheme.discovery import SearchBounds, certified_norm, discover
from flexscheme.gaps import delete, satisfies
from flexscheme.perms import Basis, avoids_all

# Bases with known schemes inside the default bounds; every corpus-wide
# property runs over these.
CORPUS_TEXT = [
    "123",
    "132",
    "123;132",
    "123;231",
    "123;321",
    "132;213",
    "132;231",
    "1234",
    "1243",
    "1423;2314",
    "1324;1432",
]
CORPUS = [Basis.parse(t) for t in CORPUS_TEXT]
DEFAULT_BOUNDS = SearchBounds(max_depth=8, max_gap_norm=2)

_schemes: dict[Basis, object] = {}


def discovered(basis: Basis):
    """FS discovery at the default bounds, shared across the session."""
    if basis not in _schemes:
        _schemes[basis] = discover(basis, DEFAULT_BOUNDS, "FS")
    return _schemes[basis]


@pytest.fixture(params=CORPUS, ids=CORPUS_TEXT)
def corpus_basis(request) -> Basis:
    return request.param


def spot_check(basis, scheme, samples=50, beyond=2, seed=0):
    """Compare counts on random gap vectors up to ``beyond`` past the certified norm.

    Covers every case of every rule on downfixes of length <= 3. Returns
    (vectors checked, mismatches).
    """
    rng = random.Random(seed)
    mismatches = checked = 0
    for pi, rule in sorted(scheme.rules.items()):
        if len(pi) > 3 or not rule.cases or not avoids_all(pi, basis):
            continue
        priors = []
        for case in rule.cases:
            top = certified_norm(basis, case.condition) + beyond
            found = 0
            for _ in range(samples * 40):
                if found == samples:
                    break
                g = list(case.condition)
                for _ in range(rng.randint(0, top - sum(g))):
                    g[rng.randrange(len(g))] += 1
                g = tuple(g)
                if any(satisfies(g, p) for p in priors):
                    continue
                found += 1
                lhs = count_Z(basis, pi, g)
                rhs = 0 if case.action == 0 else count_Z(basis, *delete(pi, g, case.action))
                mismatches += lhs != rhs
            checked += found
            priors.append(case.condition)
    return checked, mismatches


ACCEPTANCE: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
