"""Machine-checkable verdict records.

A record is one line of canonical JSON (sorted keys, no whitespace) plus a
SHA-256 of that line, so identical runs produce byte-identical output.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any

HOLDS = "Holds"
VIOLATED = "Violated"
REFUTED = "RefutedUpToBounds"
INCONCLUSIVE = "Inconclusive"
EXHAUSTED = "Exhausted"
WITNESS = "WitnessFound"

# exit codes of the command line front end
EXIT_CODES = {HOLDS: 0, WITNESS: 0, VIOLATED: 1, REFUTED: 1, INCONCLUSIVE: 2, EXHAUSTED: 2}


def _plain(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bytes, bytearray)):
        return list(value)
    if hasattr(value, "item"):  # numpy scalars
        return value.item()
    return value


def canonical_json(value: Any) -> str:
    return json.dumps(_plain(value), sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class Certificate:
    claim: str
    verdict: str
    bounds: dict[str, Any] = field(default_factory=dict)
    color: Any = None
    witness: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)
    specs: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def violated(self) -> bool:
        return self.verdict == VIOLATED

    def body(self) -> dict[str, Any]:
        return _plain({
            "claim": self.claim,
            "verdict": self.verdict,
            "bounds": self.bounds,
            "color": self.color,
            "witness": self.witness,
            "details": self.details,
            "specs": self.specs,
        })

    def content_hash(self) -> str:
        return hashlib.sha256(canonical_json(self.body()).encode()).hexdigest()

    def to_line(self) -> str:
        record = self.body()
        record["sha256"] = self.content_hash()
        return canonical_json(record)

    @classmethod
    def from_line(cls, line: str) -> "Certificate":
        data = json.loads(line)
        data.pop("sha256", None)
        return cls(**data)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES.get(self.verdict, 2)


def read_certificates(text: str) -> list[tuple[Certificate, str | None]]:
    """Parse records; returns each certificate with the hash stored in its line."""
    out = []
    for line in text.splitlines():
        if line.strip():
            stored = json.loads(line).get("sha256")
            out.append((Certificate.from_line(line), stored))
    return out
