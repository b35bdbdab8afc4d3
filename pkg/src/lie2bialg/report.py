"""Verification reports: named checks plus the witnesses that violate them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable


@dataclass(frozen=True)
class Witness:
    check: str
    args: tuple[str, ...]
    defect: Any  # SymElement, ExteriorElement, Fraction or a rendered string

    def render(self) -> str:
        return str(self.defect)

    def to_dict(self) -> dict:
        return {"check": self.check, "args": list(self.args), "defect": self.render()}


@dataclass
class Report:
    """Checks that were run, in order, and every violating basis tuple found.

    An empty witness list means the structure passed. Verification never
    raises on a failing structure; it records the failure here.
    """

    checks: list[str] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def __bool__(self) -> bool:
        return self.passed

    def add_check(self, name: str) -> None:
        if name not in self.checks:
            self.checks.append(name)

    def fail(self, check: str, args: Iterable[str], defect: Any) -> None:
        self.add_check(check)
        self.witnesses.append(Witness(check, tuple(args), defect))

    def failed_checks(self) -> list[str]:
        bad = {w.check for w in self.witnesses}
        return [c for c in self.checks if c in bad]

    def check_passed(self, name: str) -> bool:
        if name not in self.checks:
            raise KeyError(f"no check named {name!r} in report")
        return all(w.check != name for w in self.witnesses)

    def witnesses_for(self, name: str) -> list[Witness]:
        return [w for w in self.witnesses if w.check == name]

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.add_check(prefix + c)
        for w in other.witnesses:
            self.witnesses.append(Witness(prefix + w.check, w.args, w.defect))
        return self

    def summary_lines(self, max_witnesses: int = 3) -> list[str]:
        lines = []
        for c in self.checks:
            ws = self.witnesses_for(c)
            if not ws:
                lines.append(f"PASS {c}")
                continue
            lines.append(f"FAIL {c} ({len(ws)} violating tuple{'s' if len(ws) > 1 else ''})")
            for w in ws[:max_witnesses]:
                lines.append(f"    ({', '.join(w.args)}) -> {w.render()}")
        return lines

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [{"name": c, "passed": self.check_passed(c)} for c in self.checks],
            "witnesses": [w.to_dict() for w in self.witnesses],
        }
