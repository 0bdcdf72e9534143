"""Inequality audit records and their JSON form."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

TOL_REL = 1e-6
DISCRETIZATION_ALLOWANCE = 0.02

_JSON_KEYS = ("name", "lhs", "rhs", "slack", "satisfied", "preconditions_met")


@dataclass(frozen=True)
class AuditEntry:
    """One inequality ``lhs <= rhs`` evaluated on concrete data.

    ``one_sided`` marks entries whose left side uses an upper estimate of
    lambda2; a failure there is inconclusive rather than a violation.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    preconditions_met: bool = True
    one_sided: bool = False
    allowance: float = 0.0

    @property
    def inconclusive(self) -> bool:
        return self.one_sided and self.preconditions_met and not self.satisfied

    @property
    def violated(self) -> bool:
        return self.preconditions_met and not self.one_sided and not self.satisfied

    def to_dict(self) -> dict:
        return {k: _jsonable(getattr(self, k)) for k in _JSON_KEYS}


def make_entry(name, lhs, rhs, *, allowance=0.0, one_sided=False, tol_rel=TOL_REL) -> AuditEntry:
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs
    ok = slack >= -(tol_rel + allowance) * abs(rhs)
    return AuditEntry(name, lhs, rhs, slack, bool(ok), True, one_sided, allowance)


def skipped_entry(name) -> AuditEntry:
    """Entry for an inequality whose hypotheses do not hold here."""
    nan = float("nan")
    return AuditEntry(name, nan, nan, nan, False, preconditions_met=False)


@dataclass
class AuditReport:
    instance: dict = field(default_factory=dict)
    entries: list = field(default_factory=list)

    def __getitem__(self, name) -> AuditEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def names(self):
        return [e.name for e in self.entries]

    @property
    def violations(self):
        return [e for e in self.entries if e.violated]

    @property
    def inconclusive(self):
        return [e for e in self.entries if e.inconclusive]

    def to_dict(self) -> dict:
        return {
            "instance": {k: _jsonable(v) for k, v in self.instance.items()},
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def fmt12(x: float) -> float:
    """Round to 12 significant digits for serialized output."""
    return float(f"{x:.12g}")


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return None if not math.isfinite(v) else fmt12(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    try:
        return _jsonable(float(v))
    except (TypeError, ValueError):
        return str(v)
