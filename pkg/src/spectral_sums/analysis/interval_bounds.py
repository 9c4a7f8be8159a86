"""Finite eigenvalue-sum inequalities on (0, pi).

Each check takes a potential and precomputed spectra (``SpectrumResult``)
and returns an ``InequalityReport``.  Dirichlet spectra hold
``lambda_1, lambda_2, ...``; Neumann spectra hold ``mu_0, mu_1, ...``.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from ..errors import DomainError
from ..interval_spectrum import BoundaryCondition, SpectrumResult
from ..potential import FourierPotential, SampledPotential, as_fourier, symmetry_classify
from .reports import InequalityReport, inapplicable, tolerance


def rayleigh(p: FourierPotential, bc, k: int) -> float:
    """Rayleigh quotient of ``q`` at the free eigenfunction of mode ``k``."""
    bc = BoundaryCondition.parse(bc)
    if k < bc.first_index:
        raise DomainError(f"mode index {k} is below {bc.first_index} for {bc.value}")
    half_q0 = 0.5 * p.coefficient(0)
    if bc is BoundaryCondition.DIRICHLET:
        return k * k + half_q0 - 0.5 * p.coefficient(2 * k)
    if k == 0:
        return half_q0
    return k * k + half_q0 + 0.5 * p.coefficient(2 * k)


def _even_coefficient_sum(p: FourierPotential, n: int) -> float:
    return math.fsum(p.coefficient(2 * k) for k in range(1, n + 1))


def verify_dirichlet_sum(p: FourierPotential, n: int, spec: SpectrumResult, tol_scale: float = 1.0) -> InequalityReport:
    """``sum_{k<=n} (lambda_k - k^2 - q_0/2) <= -1/2 sum_{k<=n} q_{2k}``."""
    if n < 1:
        raise DomainError("n must be at least 1")
    spec.require(n)
    k = np.arange(1, n + 1)
    lhs = math.fsum(spec.values[:n] - k**2 - 0.5 * p.coefficient(0))
    rhs = -0.5 * _even_coefficient_sum(p, n)
    return InequalityReport(
        "dirichlet-sum", n, lhs, rhs, tolerance(spec.errors[:n], scale=tol_scale),
        metadata={"basis_size": spec.basis_size, "band_limited": p.band_limited},
    )


def verify_neumann_sum(p: FourierPotential, n: int, spec: SpectrumResult, tol_scale: float = 1.0) -> InequalityReport:
    """``sum_{k=0}^{n} (mu_k - k^2 - q_0/2) <= 1/2 sum_{k<=n} q_{2k}``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    spec.require(n + 1)
    k = np.arange(0, n + 1)
    lhs = math.fsum(spec.values[: n + 1] - k**2 - 0.5 * p.coefficient(0))
    rhs = 0.5 * _even_coefficient_sum(p, n)
    return InequalityReport(
        "neumann-sum", n, lhs, rhs, tolerance(spec.errors[: n + 1], scale=tol_scale),
        metadata={"basis_size": spec.basis_size, "band_limited": p.band_limited},
    )


def verify_combined(
    p: FourierPotential, n: int, dspec: SpectrumResult, nspec: SpectrumResult, tol_scale: float = 1.0
) -> InequalityReport:
    """Averaged Dirichlet/Neumann bound, free of Fourier coefficients (rhs is 0)."""
    if n < 1:
        raise DomainError("n must be at least 1")
    dspec.require(n)
    nspec.require(n + 1)
    avg = 0.5 * p.coefficient(0)
    k = np.arange(1, n + 1)
    lam, mu = dspec.values[:n], nspec.values[: n + 1]
    lhs = math.fsum((0.5 * (lam + mu[1:]) - k**2 - avg).tolist() + [0.5 * (mu[0] - avg)])
    tol = tolerance(
        np.concatenate([dspec.errors[:n], nspec.errors[: n + 1]]),
        weights=np.concatenate([np.full(n, 0.5), [0.5], np.full(n, 0.5)]),
        scale=tol_scale,
    )
    return InequalityReport("combined-sum", n, lhs, 0.0, tol)


def verify_sumpower(
    p: FourierPotential, n: int, s: float, dspec: SpectrumResult, nspec: SpectrumResult, tol_scale: float = 1.0
) -> InequalityReport:
    """Negative-power sums: requires ``mu_0 > 0``, otherwise the report is inapplicable."""
    if n < 1 or s <= 0:
        raise DomainError("need n >= 1 and s > 0")
    dspec.require(n)
    nspec.require(n + 1)
    lam, mu = dspec.values[:n], nspec.values[: n + 1]
    avg = 0.5 * p.coefficient(0)
    if mu[0] <= 0:
        return inapplicable("sum-power", n, f"mu_0 = {mu[0]:.6g} is not positive", sense=">=")
    lhs = math.fsum(np.concatenate([lam, mu]) ** -s)
    k = np.arange(1, n + 1)
    rhs = 2.0 * math.fsum((k**2 + avg) ** -s) + avg**-s
    tol = tolerance(
        np.concatenate([dspec.errors[:n], nspec.errors[: n + 1]]),
        weights=s * np.concatenate([lam, mu]) ** (-s - 1),
        scale=tol_scale,
    )
    return InequalityReport("sum-power", n, lhs, rhs, tol, sense=">=", metadata={"s": s, "mu_0": float(mu[0])})


class Branch(enum.Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    ZETA = "zeta"


def verify_app(
    p: SampledPotential,
    n: int,
    branch,
    spec: SpectrumResult,
    s: float = 1.0,
    max_index: int | None = None,
    tol_scale: float = 1.0,
) -> InequalityReport:
    """Coefficient-free bounds for potentials with ordered boundary slopes.

    ``branch`` DIRICHLET needs ``q'(x) <= q'(pi - x)`` on (0, pi/2) (e.g. convex q),
    NEUMANN the reverse (e.g. concave q), and ZETA the Dirichlet condition plus
    a non-positive integral and a positive ground state.  ``spec`` must be the
    spectrum of the Fourier truncation of ``p`` (``as_fourier(p, max_index)``).
    """
    branch = Branch(branch)
    symmetry = symmetry_classify(p)
    fp = as_fourier(p, max_index)
    avg = 0.5 * fp.coefficient(0)
    meta = {"symmetry": symmetry.value, "mean": avg}

    if branch is Branch.NEUMANN:
        if n < 0:
            raise DomainError("n must be non-negative")
        if not symmetry.allows_neumann:
            return inapplicable("slope-neumann-sum", n, f"slope condition fails ({symmetry.value})")
        spec.require(n + 1)
        k = np.arange(0, n + 1)
        lhs = math.fsum(spec.values[: n + 1] - k**2 - avg)
        return InequalityReport(
            "slope-neumann-sum", n, lhs, 0.0, tolerance(spec.errors[: n + 1], scale=tol_scale), metadata=meta
        )

    if n < 1:
        raise DomainError("n must be at least 1")
    if branch is Branch.DIRICHLET:
        if not symmetry.allows_dirichlet:
            return inapplicable("slope-dirichlet-sum", n, f"slope condition fails ({symmetry.value})")
        spec.require(n)
        k = np.arange(1, n + 1)
        lhs = math.fsum(spec.values[:n] - k**2 - avg)
        return InequalityReport(
            "slope-dirichlet-sum", n, lhs, 0.0, tolerance(spec.errors[:n], scale=tol_scale), metadata=meta
        )

    if s <= 0:
        raise DomainError("s must be positive")
    if not symmetry.allows_dirichlet:
        return inapplicable("slope-zeta", n, f"slope condition fails ({symmetry.value})", sense=">=")
    if avg > 0:
        return inapplicable("slope-zeta", n, f"integral of q is positive (mean {avg:.6g})", sense=">=")
    spec.require(n)
    lam = spec.values[:n]
    if lam[0] <= 0:
        return inapplicable("slope-zeta", n, f"lambda_1 = {lam[0]:.6g} is not positive", sense=">=")
    k = np.arange(1, n + 1)
    lhs = math.fsum(lam**-s)
    rhs = math.fsum(k ** (-2.0 * s))
    tol = tolerance(spec.errors[:n], weights=s * lam ** (-s - 1), scale=tol_scale)
    return InequalityReport("slope-zeta", n, lhs, rhs, tol, sense=">=", metadata={**meta, "s": s})


def cosine_sum(n: int, x) -> np.ndarray:
    """``sum_{k<=n} cos^2(k x) / k^2``."""
    k = np.arange(1, n + 1)
    return (np.cos(np.multiply.outer(np.asarray(x, dtype=float), k)) ** 2) @ (1.0 / k**2)


def cosine_sum_monotonic(n: int, grid: int = 10_000) -> bool:
    """Whether ``sum_{k<=n} cos^2(kx)/k^2`` is non-increasing on a ``grid``-point mesh of (0, pi/2)."""
    if n < 1 or grid < 2:
        raise DomainError("need n >= 1 and grid >= 2")
    x = np.linspace(0.0, 0.5 * math.pi, grid + 2)[1:-1]
    values = np.empty(grid)
    for start in range(0, grid, 2048):
        values[start : start + 2048] = cosine_sum(n, x[start : start + 2048])
    return bool(np.all(np.diff(values) <= 1e-12))
