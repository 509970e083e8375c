"""Verification report container shared by every sweep."""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field


@dataclass
class VerificationReport:
    statement: str
    q: int
    m: int
    pairs_checked: int = 0
    failures: list = field(default_factory=list)
    witness_stats: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    seed: int | None = None
    elapsed: float = 0.0

    @property
    def verified(self) -> bool:
        return not self.failures

    def body(self) -> dict:
        """Everything except timing; this is what the certificate hashes."""
        return {
            "statement": self.statement,
            "q": self.q,
            "m": self.m,
            "seed": self.seed,
            "pairs_checked": self.pairs_checked,
            "verified": self.verified,
            "failures": self.failures,
            "witness_stats": {str(k): v for k, v in sorted(self.witness_stats.items(), key=lambda kv: str(kv[0]))},
            "details": self.details,
        }

    def certificate(self) -> str:
        blob = json.dumps(self.body(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_json(self) -> dict:
        out = self.body()
        out["certificate"] = self.certificate()
        out["elapsed_s"] = round(self.elapsed, 3)
        return out
