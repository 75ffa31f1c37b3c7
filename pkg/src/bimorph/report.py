"""Check records shared by all verifiers.

A :class:`LawReport` is a list of named checks, each ``pass``, ``fail``
(with a witness) or ``skipped`` (with the budget that stopped it).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import SizeBudgetExceeded

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


def jsonable(value):
    """Convert labels, numpy scalars and tuples into plain JSON values."""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return value.item()
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


@dataclass
class Check:
    name: str
    verdict: str
    anchor: str = ""
    scope: Any = None
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def failed(self) -> bool:
        return self.verdict == FAIL

    def to_dict(self) -> dict:
        d = {"name": self.name, "paper_anchor": self.anchor, "verdict": self.verdict}
        if self.verdict == FAIL:
            d["witness"] = jsonable(self.witness)
        else:
            d["scope"] = jsonable(self.scope)
        return d


@dataclass
class LawReport:
    subject: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name, verdict, anchor="", scope=None, witness=None) -> Check:
        c = Check(name, verdict, anchor, scope, witness)
        self.checks.append(c)
        return c

    def passed_check(self, name, anchor="", scope=None):
        return self.add(name, PASS, anchor, scope)

    def failed_check(self, name, witness, anchor="", scope=None):
        return self.add(name, FAIL, anchor, scope, witness)

    def skipped_check(self, name, reason, anchor=""):
        return self.add(name, SKIPPED, anchor, {"skipped": str(reason)})

    def run(self, name, fn, anchor="", scope=None) -> Check:
        """Record ``fn()``: ``None`` means pass, anything else is a witness.

        A budget overrun while evaluating is recorded as skipped.
        """
        try:
            witness = fn()
        except SizeBudgetExceeded as exc:
            return self.skipped_check(name, exc, anchor)
        if witness is None:
            return self.passed_check(name, anchor, scope)
        return self.failed_check(name, witness, anchor, scope)

    def extend(self, other: "LawReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.verdict, c.anchor, c.scope, c.witness))

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == FAIL]

    @property
    def skipped(self) -> list[Check]:
        return [c for c in self.checks if c.verdict == SKIPPED]

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def first_failure(self) -> Check | None:
        f = self.failures
        return f[0] if f else None

    def by_name(self, name: str) -> list[Check]:
        return [c for c in self.checks if c.name == name]

    def summary(self) -> str:
        n = len(self.checks)
        return f"{self.subject}: {n - len(self.failures) - len(self.skipped)}/{n} pass, {len(self.failures)} fail, {len(self.skipped)} skipped"

    def to_dict(self) -> dict:
        return {"subject": self.subject, "checks": [c.to_dict() for c in self.checks]}


@dataclass
class Verdict:
    """A boolean answer with the evidence behind it."""

    holds: bool
    witness: Any = None
    scope: Any = None
    reason: str = ""

    def __bool__(self):
        return self.holds
