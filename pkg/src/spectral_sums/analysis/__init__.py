"""Signed-slack verification of eigenvalue-sum inequalities, limits and decompositions."""

from .interval_bounds import (
    Branch,
    cosine_sum,
    cosine_sum_monotonic,
    rayleigh,
    verify_app,
    verify_combined,
    verify_dirichlet_sum,
    verify_neumann_sum,
    verify_sumpower,
)
from .reports import CSV_HEADER, InequalityReport, Status, tolerance
from .scans import CounterexampleScan, EqualityGapRow, counterexample_scan, equality_gap_scan
from .torus_bounds import verify_torus_sum, verify_toruspower
from .trace import DikiiReport, TraceConvergenceReport, dikii_sums, trace_partial_sums, trace_target
from .zeta import abstract_zeta_bound, power_representation, powerrep_check

__all__ = [
    "Branch",
    "CSV_HEADER",
    "CounterexampleScan",
    "DikiiReport",
    "EqualityGapRow",
    "InequalityReport",
    "Status",
    "TraceConvergenceReport",
    "abstract_zeta_bound",
    "cosine_sum",
    "cosine_sum_monotonic",
    "counterexample_scan",
    "dikii_sums",
    "equality_gap_scan",
    "power_representation",
    "powerrep_check",
    "rayleigh",
    "tolerance",
    "trace_partial_sums",
    "trace_target",
    "verify_app",
    "verify_combined",
    "verify_dirichlet_sum",
    "verify_neumann_sum",
    "verify_sumpower",
    "verify_torus_sum",
    "verify_toruspower",
]
