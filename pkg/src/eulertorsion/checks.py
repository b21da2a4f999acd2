from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None


@dataclass
class SuiteReport:
    """Named boolean checks for one suite at one genus; failures are data."""

    suite: str
    genus: int
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def record(self, name: str, passed: bool, witness: Any = None) -> bool:
        passed = bool(passed)
        self.checks.append(Check(name, passed, None if witness is None else str(witness)))
        return passed

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        return asdict(self)
