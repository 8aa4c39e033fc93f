"""Deterministic JSON reports.

Reports are byte-identical across runs for identical inputs, configuration
and seed, so they carry no wall-clock data; commands print timing to stderr
instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Report:
    command: str
    config: dict
    checks: list = field(default_factory=list)
    payload: dict = field(default_factory=dict)

    def add(self, record):
        """Append a check record (anything with as_record(), or a dict)."""
        self.checks.append(record if isinstance(record, dict) else record.as_record())

    def extend(self, records):
        for r in records:
            self.add(r)

    @property
    def passed(self) -> bool:
        return all(_record_passed(c) for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "config": self.config,
            "checks": self.checks,
            "verdict": "pass" if self.passed else "fail",
            **self.payload,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _record_passed(record: dict) -> bool:
    if record.get("verdict") == "fail":
        return False
    for value in record.values():
        if isinstance(value, list):
            if any(isinstance(v, dict) and not _record_passed(v) for v in value):
                return False
    return True
