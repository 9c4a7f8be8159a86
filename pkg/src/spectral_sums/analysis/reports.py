from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

TOL_FLOOR = 1e-9
CSV_HEADER = ("theorem", "n", "lhs", "rhs", "slack", "tol", "status")


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class InequalityReport:
    """One inequality checked at one truncation.

    ``sense`` is ``"<="`` when the claim is ``lhs <= rhs``, ``">="`` for
    ``lhs >= rhs`` and ``"=="`` for an identity.  ``slack`` is signed so that
    it is non-negative exactly when the claim holds (an identity has slack
    ``-|lhs - rhs|``), and the check passes when ``slack >= -tol``.
    """

    theorem: str
    n: int
    lhs: float
    rhs: float
    tol: float
    sense: str = "<="
    applicable: bool = True
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.sense not in ("<=", ">=", "=="):
            raise ValueError(f"sense must be '<=', '>=' or '==', got {self.sense!r}")

    @property
    def slack(self) -> float:
        if self.sense == "<=":
            return self.rhs - self.lhs
        if self.sense == ">=":
            return self.lhs - self.rhs
        return -abs(self.lhs - self.rhs)

    @property
    def status(self) -> Status:
        if not self.applicable:
            return Status.INAPPLICABLE
        slack = self.slack
        if math.isfinite(slack) and slack >= -self.tol:
            return Status.PASS
        return Status.FAIL

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def csv_row(self) -> tuple:
        return (self.theorem, self.n, self.lhs, self.rhs, self.slack, self.tol, self.status.value)


def inapplicable(theorem: str, n: int, reason: str, lhs=math.nan, rhs=math.nan, sense="<=") -> InequalityReport:
    return InequalityReport(
        theorem, n, float(lhs), float(rhs), math.nan, sense, applicable=False, metadata={"reason": reason}
    )


def tolerance(errors, weights=None, scale: float = 1.0, floor: float = TOL_FLOOR) -> float:
    """Sum of (weighted) per-eigenvalue error estimates plus an absolute floor."""
    errors = np.asarray(errors, dtype=float)
    if weights is not None:
        errors = errors * np.abs(np.asarray(weights, dtype=float))
    return scale * (float(np.sum(errors)) + floor)
