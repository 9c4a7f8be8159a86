"""Parameter scans: absence of a lower bound, and strictness away from constants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import DomainError
from ..interval_spectrum import BoundaryCondition, solve
from ..potential import FourierPotential
from .interval_bounds import verify_dirichlet_sum, verify_neumann_sum
from .reports import InequalityReport, tolerance

SHARPNESS_FACTOR = 10.0
SHARPNESS_COEFFICIENT = 0.1


@dataclass(frozen=True, eq=False)
class CounterexampleScan:
    n: int
    t_values: np.ndarray
    eigen_sums: np.ndarray
    reports: list[InequalityReport]
    slope: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)


def counterexample_potential(n: int, t: float) -> FourierPotential:
    """``t cos((2n+2) x)``: every coefficient ``q_0 .. q_{2n}`` vanishes."""
    return FourierPotential.from_terms({2 * n + 2: t})


def counterexample_scan(n: int, t_values: Sequence[float], basis_size: int | None = None) -> CounterexampleScan:
    """Sum of the first ``n`` Dirichlet eigenvalues of ``t cos((2n+2)x)`` against the test-function bound.

    The bound ``sum_{k<n} k^2 + (n+1)^2 - t/2`` comes from the trial modes
    ``1..n-1`` and ``n+1``; it decreases without limit in ``t``.  ``slope`` is
    the least-squares slope of the eigenvalue sums in ``t``.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    t = np.asarray(t_values, dtype=float)
    if basis_size is None:
        basis_size = max(64, 4 * (2 * n + 2))
    sums, reports = [], []
    for tv in t:
        spec = solve(counterexample_potential(n, tv), BoundaryCondition.DIRICHLET, n, basis_size)
        total = math.fsum(spec.values[:n])
        bound = math.fsum(k * k for k in range(1, n)) + (n + 1) ** 2 - 0.5 * tv
        sums.append(total)
        reports.append(
            InequalityReport("no-lower-bound", n, total, bound, tolerance(spec.errors[:n]), metadata={"t": float(tv)})
        )
    sums = np.array(sums)
    slope = float(np.polyfit(t, sums, 1)[0]) if t.size >= 2 and np.ptp(t) > 0 else math.nan
    return CounterexampleScan(n, t, sums, reports, slope)


@dataclass(frozen=True)
class EqualityGapRow:
    label: str
    bc: str
    n: int
    slack: float
    tol: float
    constant: bool
    max_even_coefficient: float

    @property
    def requires_gap(self) -> bool:
        return not self.constant and self.max_even_coefficient >= SHARPNESS_COEFFICIENT

    @property
    def ok(self) -> bool:
        if self.constant:
            return abs(self.slack) <= self.tol
        if self.requires_gap:
            return self.slack > SHARPNESS_FACTOR * self.tol
        return self.slack >= -self.tol


def equality_gap_scan(potentials, n: int, basis_size: int | None = None) -> list[EqualityGapRow]:
    """Slack of the Dirichlet and Neumann sum bounds at ``n`` for each potential.

    ``potentials`` is a mapping label -> potential or a sequence of potentials.
    Constants must give zero slack; a non-constant potential with some
    ``|q_{2k}| >= 0.1`` (k <= n) must give slack above ten times the tolerance.
    """
    items = potentials.items() if hasattr(potentials, "items") else ((str(i), p) for i, p in enumerate(potentials))
    rows = []
    for label, p in items:
        dspec = solve(p, BoundaryCondition.DIRICHLET, n, basis_size)
        nspec = solve(p, BoundaryCondition.NEUMANN, n + 1, basis_size)
        peak = max(abs(p.coefficient(2 * k)) for k in range(1, n + 1))
        for bc, report in (
            ("dirichlet", verify_dirichlet_sum(p, n, dspec)),
            ("neumann", verify_neumann_sum(p, n, nspec)),
        ):
            rows.append(EqualityGapRow(label, bc, n, report.slack, report.tol, p.is_constant(), peak))
    return rows
