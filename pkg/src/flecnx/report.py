"""Result currency shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional


@dataclass(frozen=True)
class CheckReport:
    status: str  # "pass" or "fail"
    witness: Optional[dict] = None
    trace: dict = field(default_factory=dict)
    statement: Any = None
    detail: str = ""

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and self.witness is None:
            raise ValueError("a failing report needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self, labels=None) -> dict:
        def show(v):
            if labels is not None and isinstance(v, int) and 0 <= v < len(labels):
                return labels[v]
            return v

        out = {"status": self.status, "statement": str(self.statement) if self.statement is not None else None}
        if self.witness is not None:
            out["witness"] = {k: show(v) for k, v in self.witness.items()}
        if self.trace:
            out["trace"] = {k: show(v) for k, v in self.trace.items()}
        if self.detail:
            out["detail"] = self.detail
        return out


def passed(statement=None, detail="") -> CheckReport:
    return CheckReport("pass", statement=statement, detail=detail)


def failed(witness, statement=None, trace=None, detail="") -> CheckReport:
    return CheckReport("fail", witness=dict(witness), trace=dict(trace or {}), statement=statement, detail=detail)
