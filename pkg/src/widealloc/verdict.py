from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification: truthy when ``ok``; ``violation`` names the first failure."""

    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(True)

    @classmethod
    def failed(cls, violation: str) -> "Verdict":
        return cls(False, violation)
