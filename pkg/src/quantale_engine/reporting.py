"""Certificates and law reports: checker results are data, not exceptions."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Certificate:
    """Outcome of a single law check, with a witness on failure."""

    ok: bool
    law: str | None = None
    witness: tuple | None = None

    def to_dict(self) -> dict:
        d: dict = {"ok": self.ok}
        if not self.ok:
            d["law"] = self.law
            d["witness"] = list(self.witness) if self.witness is not None else None
        return d


PASS = Certificate(True)


def failure(law: str, witness: tuple) -> Certificate:
    return Certificate(False, law, witness)


@dataclass
class LawReport:
    """Per-law pass/fail table with witnesses for the failures."""

    checks: dict[str, Certificate] = field(default_factory=dict)

    def record(self, law: str, cert: Certificate) -> None:
        self.checks[law] = cert

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def failures(self) -> dict[str, Certificate]:
        return {law: c for law, c in self.checks.items() if not c.ok}

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "laws": {law: c.to_dict() for law, c in sorted(self.checks.items())},
        }
