"""Trace-formula partial sums and the change-of-basis decomposition of eigenvalue sums."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError
from ..interval_spectrum import BoundaryCondition, SpectrumResult, solve
from ..potential import FourierPotential, boundary_sum, mean
from .interval_bounds import rayleigh
from .reports import tolerance


def trace_target(p: FourierPotential) -> float:
    """Limit of the regularized Dirichlet sum: ``mean/2 - (q(0) + q(pi))/4``."""
    return 0.5 * mean(p) - 0.25 * boundary_sum(p)


@dataclass(frozen=True, eq=False)
class TraceConvergenceReport:
    partial_sums: np.ndarray  # S_1 .. S_N
    target: float
    errors: np.ndarray  # cumulative eigenvalue error estimate per n
    band_limited: bool = True

    @property
    def n_max(self) -> int:
        return self.partial_sums.size

    @property
    def deviation(self) -> np.ndarray:
        return self.partial_sums - self.target

    @property
    def last_quartile(self) -> range:
        start = max(1, math.ceil(0.75 * self.n_max))
        return range(start, self.n_max + 1)

    @property
    def max_tail_deviation(self) -> float:
        idx = np.array(self.last_quartile) - 1
        return float(np.max(np.abs(self.deviation[idx])))

    def rows(self):
        for n, (s, d) in enumerate(zip(self.partial_sums, self.deviation), start=1):
            yield n, float(s), self.target, float(d)


def trace_partial_sums(p: FourierPotential, n_max: int, dspec: SpectrumResult | None = None) -> TraceConvergenceReport:
    """``S_n = sum_{k<=n} (lambda_k - k^2 - q_0/2)`` for n = 1..n_max and the limiting value."""
    if n_max < 1:
        raise DomainError("n_max must be at least 1")
    if dspec is None:
        dspec = solve(p, BoundaryCondition.DIRICHLET, n_max)
    dspec.require(n_max)
    k = np.arange(1, n_max + 1)
    terms = dspec.values[:n_max] - k**2 - mean(p)
    return TraceConvergenceReport(
        partial_sums=np.cumsum(terms),
        target=trace_target(p),
        errors=np.cumsum(dspec.errors[:n_max]),
        band_limited=p.band_limited,
    )


@dataclass(frozen=True, eq=False)
class DikiiReport:
    """Sums ``D_n = sum_{k<=n} (R[q, phi_k] - R[q, psi_k])`` computed three ways.

    ``coefficients[k-1, m-1] = <psi_k, phi_m>`` for the free sine modes
    ``psi_k`` and the computed eigenfunctions ``phi_m`` (rows k <= n).
    """

    coefficients: np.ndarray
    d_spectral: np.ndarray
    d_coefficients: np.ndarray
    d_split: np.ndarray
    tol: np.ndarray
    row_norms: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return self.d_spectral.size

    @property
    def agreement(self) -> float:
        return float(
            max(
                np.max(np.abs(self.d_spectral - self.d_coefficients)),
                np.max(np.abs(self.d_spectral - self.d_split)),
            )
        )

    @property
    def nonpositive(self) -> bool:
        return bool(np.all(self.d_spectral <= self.tol))

    @property
    def tail_decreasing(self) -> bool:
        start = max(1, math.ceil(0.75 * self.n_max))
        tail = np.abs(self.d_spectral[start - 1 :])
        return bool(np.all(np.diff(tail) <= 1e-12))

    @property
    def passed(self) -> bool:
        return (
            self.agreement <= 1e-8
            and self.nonpositive
            and self.tail_decreasing
            and bool(np.all(np.abs(self.row_norms - 1) <= 1e-8))
        )

    def rows(self):
        for n in range(1, self.n_max + 1):
            yield (
                n,
                float(self.d_spectral[n - 1]),
                float(self.d_coefficients[n - 1]),
                float(self.d_split[n - 1]),
                float(self.tol[n - 1]),
            )


def dikii_sums(
    p: FourierPotential, n: int, dspec: SpectrumResult | None = None, basis_size: int | None = None
) -> DikiiReport:
    """Change-of-basis decomposition for the Dirichlet problem, with ``q`` shifted to mean zero.

    ``dspec`` is the Dirichlet spectrum of ``p`` computed with eigenvectors
    (``solve(p, "dirichlet", n, want_vectors=True)``); the mean shift only
    moves every eigenvalue by the same constant, which is removed here.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    avg = mean(p)
    centered = p.shifted(-avg)
    if dspec is None:
        dspec = solve(p, BoundaryCondition.DIRICHLET, n, basis_size=basis_size, want_vectors=True)
    if dspec.vectors is None or "all_values" not in dspec.meta:
        raise DomainError("Dikii sums need a spectrum computed with eigenvectors")
    dspec.require(n)
    lam = np.asarray(dspec.meta["all_values"]) - avg
    a = dspec.vectors  # a[k-1, m-1] = <psi_k, phi_m>
    size = lam.size
    r_free = np.array([rayleigh(centered, "dirichlet", k) for k in range(1, size + 1)])
    r_eigen_basis = (a**2) @ lam  # R[q, psi_k] expanded in eigenfunctions

    cum_lam = np.cumsum(lam[:n])
    d_spectral = cum_lam - np.cumsum(r_free[:n])
    d_coeff = cum_lam - np.cumsum(r_eigen_basis[:n])

    d_split = np.empty(n)
    for m in range(1, n + 1):
        inner = a[:m, m:]  # <psi_k, phi_j> for k <= m < j
        outer = a[m:, :m]  # <psi_j, phi_k> for k <= m < j
        swap = math.fsum((lam[:m, None] * (outer.T**2 - inner**2)).ravel())
        gap = math.fsum(((lam[:m, None] - lam[None, m:]) * inner**2).ravel())
        d_split[m - 1] = swap + gap

    return DikiiReport(
        coefficients=a[:n].copy(),
        d_spectral=d_spectral,
        d_coefficients=d_coeff,
        d_split=d_split,
        tol=np.array([tolerance(dspec.errors[:m]) for m in range(1, n + 1)]),
        row_norms=np.sum(a**2, axis=1)[:n],
        meta={"basis_size": dspec.basis_size, "mean_shift": avg},
    )
