"""Uniform pass/fail reports for the verification sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def add_violation(self, message: str) -> None:
        self.violations.append(message)

    def summary(self) -> str:
        if self.passed:
            return f"{self.name}: PASS ({self.checked} checks)"
        head = self.violations[0]
        return (f"{self.name}: FAIL ({len(self.violations)} violations in "
                f"{self.checked} checks; first: {head})")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "passed": self.passed,
            "violations": list(self.violations),
        }
