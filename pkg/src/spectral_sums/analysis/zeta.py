"""Negative-power (zeta-type) lower bounds from partial-sum upper bounds."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from .reports import InequalityReport, TOL_FLOOR, inapplicable


def power_representation(lam: float, s: float) -> float:
    """``s(s+1) * int_lam^inf alpha^(-s-2) (alpha - lam) d alpha`` via its antiderivative.

    The antiderivative of ``alpha^(-s-1) - lam alpha^(-s-2)`` is
    ``-alpha^(-s)/s + lam alpha^(-s-1)/(s+1)``; it vanishes at infinity.
    """
    if lam <= 0 or s <= 0:
        raise DomainError("power representation needs lam > 0 and s > 0")
    at_lower = -(lam**-s) / s + lam * lam ** (-s - 1) / (s + 1)
    return s * (s + 1) * (0.0 - at_lower)


def powerrep_check(lam: float, s: float) -> float:
    """Self-test: the integral representation must reproduce ``lam^-s`` to 1e-12."""
    value = power_representation(lam, s)
    direct = lam**-s
    if abs(value - direct) > 1e-12 * max(1.0, abs(direct)):
        raise ArithmeticError(f"power representation {value!r} differs from lam^-s = {direct!r}")
    return value


def zeta_bound_terms(a, b, s: float) -> np.ndarray:
    """Per-term lower bounds ``(s+1) a^-s - s a^(-s-1) b``."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return (s + 1) * a**-s - s * a ** (-s - 1) * b


def abstract_zeta_bound(lambdas, a_seq, b_seq, s: float, n: int, perturbation: float = 1e-3) -> InequalityReport:
    """``sum_{k<=n} lambda_k^-s >= sum_{k<=n} [(s+1) a_k^-s - s a_k^(-s-1) b_k]``.

    Hypotheses (positive ``lambda`` and ``a``, non-decreasing ``a``, and
    ``sum_{k<=m} lambda_k <= sum_{k<=m} b_k`` for every m <= n) are checked;
    a violation makes the report inapplicable.  When ``b`` is positive and
    non-decreasing the report also records whether ``a = b`` maximizes each
    bound term against relative perturbations of size ``perturbation``.
    """
    if n < 1 or s <= 0:
        raise DomainError("need n >= 1 and s > 0")
    lam = np.asarray(lambdas, dtype=float)[:n]
    a = np.asarray(a_seq, dtype=float)[:n]
    b = np.asarray(b_seq, dtype=float)[:n]
    if min(lam.size, a.size, b.size) < n:
        raise DomainError(f"sequences must hold at least n = {n} terms")
    tag = "abstract-zeta"
    if np.any(lam <= 0) or np.any(a <= 0):
        return inapplicable(tag, n, "lambda and a must be positive", sense=">=")
    if np.any(np.diff(a) < 0):
        return inapplicable(tag, n, "a must be non-decreasing", sense=">=")
    cl, cb = np.cumsum(lam), np.cumsum(b)
    if np.any(cl > cb + 1e-12 * np.maximum(1.0, np.abs(cb))):
        m = int(np.argmax(cl > cb + 1e-12 * np.maximum(1.0, np.abs(cb)))) + 1
        return inapplicable(tag, n, f"partial-sum hypothesis fails at m = {m}", sense=">=")

    lhs = math.fsum(lam**-s)
    rhs = math.fsum(zeta_bound_terms(a, b, s))
    meta: dict = {"s": s}
    if np.all(b > 0) and np.all(np.diff(b) >= 0):
        at_b = zeta_bound_terms(b, b, s)
        worst = max(
            float(np.max(zeta_bound_terms(b * (1 + sign * perturbation), b, s) - at_b)) for sign in (-1, 1)
        )
        meta["maximized_at_b"] = bool(worst <= 1e-15 * max(1.0, float(np.max(np.abs(at_b)))))
        meta["rhs_at_b"] = math.fsum(at_b)
        meta["rhs_not_above_b_choice"] = bool(rhs <= meta["rhs_at_b"] + 1e-12)
    return InequalityReport(tag, n, lhs, rhs, TOL_FLOOR, sense=">=", metadata=meta)
