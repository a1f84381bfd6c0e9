"""Check reports and a small evidence collector used by the verification functions."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Optional

STATUSES = ("pass", "fail", "skipped")
RECORD_FIELDS = ("check_id", "statement", "status", "witness", "elapsed_ms")


@dataclass
class CheckReport:
    check_id: str
    statement: str
    status: str
    witness: Optional[str] = None
    elapsed_ms: float = 0.0
    details: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        return {
            "check_id": self.check_id,
            "statement": self.statement,
            "status": self.status,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_text(self) -> str:
        line = f"[{self.status.upper()}] {self.check_id}: {self.statement} ({self.elapsed_ms:.0f} ms)"
        if self.witness:
            line += f"\n    witness: {self.witness}"
        return line


class Evidence:
    """Collects named sub-claims; the first failure becomes the report witness."""

    def __init__(self):
        self.checked = 0
        self.failures: list[str] = []
        self.notes: list[str] = []

    def expect(self, label: str, ok: bool, witness: object = None) -> bool:
        self.checked += 1
        if not ok:
            text = label if witness is None else f"{label}: {witness}"
            self.failures.append(text)
        return ok

    def expect_equal(self, label: str, got, want) -> bool:
        ok = got == want
        return self.expect(label, ok, None if ok else f"got {_show(got)}, expected {_show(want)}")

    def expect_zero(self, label: str, got) -> bool:
        return self.expect(label, not got, None if not got else _show(got))

    def note(self, text: str):
        self.notes.append(text)


def _show(value) -> str:
    plain = getattr(value, "to_plain", None)
    return plain() if plain else str(value)


def run_check(check_id: str, statement: str, body: Callable[[Evidence], None]) -> CheckReport:
    """Run ``body`` against a fresh :class:`Evidence` and time it.

    Exceptions inside ``body`` become failures with the exception as witness.
    """
    evidence = Evidence()
    start = time.perf_counter()
    try:
        body(evidence)
    except Exception as exc:  # noqa: BLE001 - reported, not swallowed
        evidence.failures.append(f"{type(exc).__name__}: {exc}")
    elapsed = (time.perf_counter() - start) * 1000.0
    details = [f"{evidence.checked} sub-claims checked"] + evidence.notes
    if evidence.failures:
        return CheckReport(check_id, statement, "fail", evidence.failures[0], elapsed, details + evidence.failures)
    return CheckReport(check_id, statement, "pass", None, elapsed, details)
