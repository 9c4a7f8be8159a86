from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..interval_spectrum import SpectrumResult
from ..potential import TorusFourierPotential
from ..torus_spectrum import Lattice, free_plus_average
from .reports import InequalityReport, inapplicable, tolerance


def verify_torus_sum(
    lat: Lattice, p: TorusFourierPotential, n: int, spec: SpectrumResult, tol_scale: float = 1.0
) -> InequalityReport:
    """``sum_{k=0}^{n} [lambda_k(q) - (lambda_k(0) + mean q)] <= 0``."""
    if n < 0:
        raise DomainError("n must be non-negative")
    spec.require(n + 1)
    shifted_free = free_plus_average(lat, p.average, n + 1)
    lhs = math.fsum(spec.values[: n + 1] - shifted_free)
    return InequalityReport(
        "torus-sum", n, lhs, 0.0, tolerance(spec.errors[: n + 1], scale=tol_scale),
        metadata={"average": p.average, "basis_size": spec.basis_size},
    )


def verify_toruspower(
    lat: Lattice, p: TorusFourierPotential, n: int, s: float, spec: SpectrumResult, tol_scale: float = 1.0
) -> InequalityReport:
    """Negative-power sums against the constant-potential spectrum; needs ``lambda_0(q) > 0``."""
    if n < 1 or s <= 0:
        raise DomainError("need n >= 1 and s > 0")
    spec.require(n + 1)
    lam = spec.values[: n + 1]
    if lam[0] <= 0:
        return inapplicable("torus-power", n, f"lambda_0(q) = {lam[0]:.6g} is not positive", sense=">=")
    shifted_free = free_plus_average(lat, p.average, n + 1)
    lhs = math.fsum(lam**-s)
    rhs = math.fsum(shifted_free**-s)
    tol = tolerance(spec.errors[: n + 1], weights=s * lam ** (-s - 1), scale=tol_scale)
    return InequalityReport("torus-power", n, lhs, rhs, tol, sense=">=", metadata={"s": s})
