"""Flexible schemes: replacement rules, validation, counting and the file format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .gaps import Gaps, delete, is_zero, refine, refined_downfixes, satisfies
from .oracle import EnumSequence
from .perms import Basis, InvalidInput, Perm, avoids_all, parse_perm, perm

FORMAT = "flexscheme-v1"


class SchemeIntegrityError(RuntimeError):
    """FindTerm reached a downfix the scheme has no rule for."""


class SchemeFormatError(ValueError):
    """A scheme file is malformed."""


@dataclass(frozen=True)
class Case:
    condition: Gaps
    action: int


@dataclass(frozen=True)
class Rule:
    downfix: Perm
    cases: tuple[Case, ...] = ()

    @property
    def irreducible(self) -> bool:
        return not self.cases


def _downfix_key(p: Perm) -> tuple[int, Perm]:
    return (len(p), p)


@dataclass
class Scheme:
    basis: Basis
    rules: dict[Perm, Rule]
    max_gap_norm: int = 0

    @property
    def depth(self) -> int:
        return max((len(p) for p in self.rules), default=0)

    def rule(self, pi: Perm) -> Rule:
        try:
            return self.rules[pi]
        except KeyError:
            raise SchemeIntegrityError(f"no rule for downfix {pi}") from None

    def to_dict(self) -> dict:
        return {
            "format": FORMAT,
            "basis": self.basis.texts(),
            "max_gap_norm": self.max_gap_norm,
            "rules": [
                {
                    "downfix": list(p),
                    "cases": [
                        {"condition": list(c.condition), "action": c.action}
                        for c in self.rules[p].cases
                    ],
                }
                for p in sorted(self.rules, key=_downfix_key)
            ],
        }

    def dumps(self) -> str:
        """Stable text form: one rule per line, case order preserved."""
        data = self.to_dict()
        rules = ",\n".join("    " + json.dumps(r) for r in data["rules"])
        return (
            "{\n"
            f'  "format": {json.dumps(data["format"])},\n'
            f'  "basis": {json.dumps(data["basis"])},\n'
            f'  "max_gap_norm": {data["max_gap_norm"]},\n'
            f'  "rules": [\n{rules}\n  ]\n'
            "}\n"
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def from_dict(cls, data: dict) -> Scheme:
        _expect_keys(data, {"format", "basis", "max_gap_norm", "rules"}, "scheme")
        if data["format"] != FORMAT:
            raise SchemeFormatError(f"unsupported format {data['format']!r}")
        try:
            basis = Basis(parse_perm(str(t)) for t in data["basis"])
            rules: dict[Perm, Rule] = {}
            for raw in data["rules"]:
                _expect_keys(raw, {"downfix", "cases"}, "rule")
                pi = perm(raw["downfix"])
                cases = []
                for c in raw["cases"]:
                    _expect_keys(c, {"condition", "action"}, "case")
                    cases.append(Case(tuple(int(x) for x in c["condition"]), int(c["action"])))
                if pi in rules:
                    raise SchemeFormatError(f"duplicate rule for {pi}")
                rules[pi] = Rule(pi, tuple(cases))
            return cls(basis, rules, int(data["max_gap_norm"]))
        except (InvalidInput, TypeError, ValueError) as exc:
            if isinstance(exc, SchemeFormatError):
                raise
            raise SchemeFormatError(str(exc)) from exc

    @classmethod
    def loads(cls, text: str) -> Scheme:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemeFormatError(f"not JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise SchemeFormatError("scheme must be a JSON object")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str | Path) -> Scheme:
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def _expect_keys(obj, keys: set[str], what: str) -> None:
    if not isinstance(obj, dict):
        raise SchemeFormatError(f"{what} must be an object")
    if set(obj) != keys:
        extra, missing = set(obj) - keys, keys - set(obj)
        raise SchemeFormatError(f"{what}: unknown fields {sorted(extra)}, missing {sorted(missing)}")


def validate(scheme: Scheme) -> list[str]:
    """Describe every structural problem; an empty list means the scheme is usable."""
    problems: list[str] = []
    rules = scheme.rules
    root = rules.get(())
    if root is None:
        problems.append("missing root rule for the empty downfix")
    elif root.cases:
        problems.append("root rule for the empty downfix must have no cases")
    for pi in sorted(rules, key=_downfix_key):
        rule = rules[pi]
        if rule.downfix != pi:
            problems.append(f"rule keyed {pi} holds downfix {rule.downfix}")
        if not rule.cases:
            if not avoids_all(pi, scheme.basis):
                problems.append(f"{pi}: irreducible downfix contains a basis pattern")
            for child in refined_downfixes(pi):
                if child not in rules:
                    problems.append(f"{pi}: refinement {child} has no rule")
            continue
        for k, case in enumerate(rule.cases):
            if len(case.condition) != len(pi) + 1:
                problems.append(f"{pi}: case {k} condition {case.condition} has wrong length")
            if any(x < 0 for x in case.condition):
                problems.append(f"{pi}: case {k} condition {case.condition} is negative")
            if not 0 <= case.action <= len(pi):
                problems.append(f"{pi}: case {k} action {case.action} out of range")
            elif case.action:
                target = delete(pi, (0,) * (len(pi) + 1), case.action)[0]
                if target not in rules:
                    problems.append(f"{pi}: deletion target {target} of case {k} has no rule")
        if not is_zero(rule.cases[-1].condition):
            problems.append(f"{pi}: last condition {rule.cases[-1].condition} is not all-zeros")
    return problems


class TermCounter:
    """Memoized FindTerm over one scheme.

    Evaluation uses an explicit stack, so deep refinement chains do not hit
    the interpreter's recursion limit.
    """

    def __init__(self, scheme: Scheme):
        self.scheme = scheme
        self.memo: dict[tuple[Perm, Gaps], int] = {}

    def _children(self, pi: Perm, g: Gaps) -> tuple[str, list[tuple[Perm, Gaps]]]:
        rule = self.scheme.rule(pi)
        if not rule.cases:
            if is_zero(g):
                return "one", []
            kids = []
            for i, gi in enumerate(g, 1):
                for j in range(gi):
                    kids.append(refine(pi, g, i, j))
            return "sum", kids
        for case in rule.cases:
            if satisfies(g, case.condition):
                if case.action == 0:
                    return "zero", []
                return "sum", [delete(pi, g, case.action)]
        raise SchemeIntegrityError(f"no case of {pi} applies to {g}")

    def count(self, pi: Perm, g: Gaps) -> int:
        memo = self.memo
        root = (tuple(pi), tuple(g))
        if len(root[1]) != len(root[0]) + 1:
            raise InvalidInput(f"gap vector {g} does not fit downfix {pi}")
        stack = [root]
        pending: dict[tuple[Perm, Gaps], list[tuple[Perm, Gaps]]] = {}
        while stack:
            key = stack[-1]
            if key in memo:
                stack.pop()
                continue
            kids = pending.get(key)
            if kids is None:
                kind, kids = self._children(*key)
                if kind == "one":
                    memo[key] = 1
                    stack.pop()
                    continue
                if kind == "zero":
                    memo[key] = 0
                    stack.pop()
                    continue
                pending[key] = kids
            missing = [k for k in kids if k not in memo]
            if missing:
                stack.extend(missing)
                continue
            memo[key] = sum(memo[k] for k in kids)
            del pending[key]
            stack.pop()
        return memo[root]


def find_term(scheme: Scheme, pi: Perm, g: Gaps) -> int:
    return TermCounter(scheme).count(pi, g)


def find_term_plain(scheme: Scheme, pi: Perm, g: Gaps) -> int:
    """FindTerm by direct recursion with no memo; exponential, for cross-checks."""
    rule = scheme.rule(pi)
    if not rule.cases:
        if is_zero(g):
            return 1
        return sum(
            find_term_plain(scheme, *refine(pi, g, i, j))
            for i, gi in enumerate(g, 1)
            for j in range(gi)
        )
    for case in rule.cases:
        if satisfies(g, case.condition):
            if case.action == 0:
                return 0
            return find_term_plain(scheme, *delete(pi, g, case.action))
    raise SchemeIntegrityError(f"no case of {pi} applies to {g}")


def enumerate_terms(scheme: Scheme, n_max: int, counter: TermCounter | None = None) -> EnumSequence:
    counter = counter or TermCounter(scheme)
    return EnumSequence(scheme.basis, tuple(counter.count((), (n,)) for n in range(n_max + 1)))


def make_scheme(basis: Basis, rules: Iterable[Rule], max_gap_norm: int = 0) -> Scheme:
    return Scheme(basis, {r.downfix: r for r in rules}, max_gap_norm)


def rule_from_pairs(downfix: Iterable[int], pairs: Iterable[tuple[Iterable[int], int]]) -> Rule:
    """Build a rule from ``(condition, action)`` pairs."""
    return Rule(tuple(downfix), tuple(Case(tuple(h), r) for h, r in pairs))


__all__ = [
    "Case",
    "FORMAT",
    "Rule",
    "Scheme",
    "SchemeFormatError",
    "SchemeIntegrityError",
    "TermCounter",
    "enumerate_terms",
    "find_term",
    "find_term_plain",
    "make_scheme",
    "rule_from_pairs",
    "validate",
]
