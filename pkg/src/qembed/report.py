"""Structured pass/fail records shared by all verification routines."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
REQUIRES_REDUCTION = "requires_reduction"


@dataclass
class CheckResult:
    check: str
    status: str
    max_residual: float
    witness: Any = None

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status,
                "max_residual": _jsonable(self.max_residual), "witness": _jsonable(self.witness)}


@dataclass
class VerificationReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, check: str, residual: float, tol: float, witness: Any = None) -> CheckResult:
        residual = float(residual)
        status = PASS if residual <= tol else FAIL
        result = CheckResult(check, status, residual, witness)
        self.checks.append(result)
        return result

    def flag(self, check: str, status: str, residual: float = 0.0, witness: Any = None) -> CheckResult:
        result = CheckResult(check, status, float(residual), witness)
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(CheckResult(prefix + c.check, c.status, c.max_residual, c.witness))

    def __getitem__(self, check: str) -> CheckResult:
        for c in self.checks:
            if c.check == check:
                return c
        raise KeyError(check)

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.checks), default=0.0)

    def to_dict(self) -> dict:
        return {"subject": self.subject, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def table(self) -> str:
        width = max([len(c.check) for c in self.checks] + [5])
        lines = [f"{self.subject}",
                 f"  {'check':<{width}}  {'status':<18}  max_residual"]
        for c in self.checks:
            lines.append(f"  {c.check:<{width}}  {c.status:<18}  {c.max_residual:.3e}")
        return "\n".join(lines)


def _jsonable(x):
    """Convert numpy scalars/arrays (and nested containers) to plain JSON types."""
    if x is None or isinstance(x, (str, bool, int)):
        return x
    if isinstance(x, float):
        return x if math.isfinite(x) else str(x)
    if hasattr(x, "tolist"):
        return _jsonable(x.tolist())
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)
