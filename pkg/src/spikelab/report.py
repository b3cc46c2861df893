"""Structured pass/fail reports with witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Finding:
    check: str
    passed: bool
    message: str = ""
    witness: Any = None
    skipped: bool = False

    def to_dict(self) -> dict:
        d = {"check": self.check, "passed": self.passed, "message": self.message}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.skipped:
            d["skipped"] = True
        return d


@dataclass
class AuditReport:
    name: str
    findings: list[Finding] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.findings)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, check, passed, message="", witness=None, skipped=False) -> Finding:
        f = Finding(check, bool(passed), message, witness, skipped)
        self.findings.append(f)
        return f

    def skip(self, check, message=""):
        return self.add(check, True, message, skipped=True)

    def extend(self, other: "AuditReport") -> None:
        self.findings.extend(other.findings)

    def failures(self) -> list[Finding]:
        return [f for f in self.findings if not f.passed]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "findings": [f.to_dict() for f in self.findings],
        }

    def format(self) -> str:
        lines = [f"{self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for f in self.findings:
            tag = "skip" if f.skipped else ("ok" if f.passed else "FAIL")
            line = f"  [{tag}] {f.check}"
            if f.message:
                line += f": {f.message}"
            if f.witness is not None:
                line += f" witness={f.witness}"
            lines.append(line)
        return "\n".join(lines)
