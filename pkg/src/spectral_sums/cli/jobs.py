"""Job handlers: each turns one config entry into a CSV table and a status."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable


from .. import analysis
from ..analysis.reports import CSV_HEADER, InequalityReport, Status
from ..errors import DomainError
from ..interval_spectrum import BoundaryCondition, fd_oracle, solve
from ..potential import (
    FourierPotential,
    SampledPotential,
    as_fourier,
    potential_from_spec,
    torus_potential_from_spec,
)
from ..torus_spectrum import Lattice, default_cutoff, eigenvalues_torus, enumerate_free
from .config import TORUS_THEOREMS, Job

PASS, FAIL = "pass", "fail"


@dataclass
class JobOutcome:
    header: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    status: str = PASS
    summary: dict = field(default_factory=dict)


def _status_from_reports(reports: list[InequalityReport]) -> str:
    return FAIL if any(r.status is Status.FAIL for r in reports) else PASS


def _report_outcome(reports: list[InequalityReport], **summary) -> JobOutcome:
    counts = {s.value: sum(r.status is s for r in reports) for s in Status}
    return JobOutcome(CSV_HEADER, [r.csv_row() for r in reports], _status_from_reports(reports), {**counts, **summary})


def _n_values(spec) -> list[int]:
    if isinstance(spec, int):
        return [spec]
    if isinstance(spec, dict):
        if spec["to"] < spec["from"]:
            raise DomainError("n range is empty ('to' < 'from')")
        return list(range(spec["from"], spec["to"] + 1))
    return sorted(set(spec))


def _s_values(spec, default=1.0) -> list[float]:
    if spec is None:
        return [default]
    return [float(spec)] if isinstance(spec, (int, float)) else [float(s) for s in spec]


def _interval_potential(spec: dict) -> tuple[FourierPotential, SampledPotential | None]:
    p = potential_from_spec(spec)
    if isinstance(p, SampledPotential):
        return as_fourier(p, spec.get("max_index")), p
    return p, None


def run_interval_spectrum(job: Job, tol_scale: float) -> JobOutcome:
    spec = job.spec
    fp, sampled = _interval_potential(spec["potential"])
    bc = BoundaryCondition.parse(spec["bc"])
    n = spec["n"]
    if spec.get("method", "galerkin") == "finite-difference":
        source = sampled if sampled is not None else fp
        grid = spec.get("grid", sampled.grid if sampled is not None else max(1024, 64 * n))
        result = fd_oracle(source, bc, n, grid)
    else:
        result = solve(fp, bc, n, spec.get("basis"))
    first = bc.first_index
    rows = [(first + i, float(v), float(e)) for i, (v, e) in enumerate(zip(result.values, result.errors))]
    return JobOutcome(
        ("k", "eigenvalue", "error_estimate"), rows,
        summary={"method": result.method, "basis_size": result.basis_size},
    )


def _torus_inputs(spec: dict):
    lat = Lattice(spec["lattice"]["vectors"])
    p = torus_potential_from_spec(spec.get("potential", {}))
    return lat, p


def run_torus_spectrum(job: Job, tol_scale: float) -> JobOutcome:
    spec = job.spec
    lat, p = _torus_inputs(spec)
    n = spec["n"]
    cutoff = spec.get("cutoff") or default_cutoff(lat, p, n)
    result = eigenvalues_torus(lat, p, n, cutoff)
    free = enumerate_free(lat, n).values + p.average
    rows = [
        (k, float(v), float(f), float(e))
        for k, (v, f, e) in enumerate(zip(result.values, free, result.errors))
    ]
    return JobOutcome(
        ("k", "eigenvalue", "free_plus_average", "error_estimate"), rows,
        summary={"cutoff": cutoff, "plane_waves": result.basis_size},
    )


def _verify_interval(job: Job, tol_scale: float) -> list[InequalityReport]:
    spec = job.spec
    theorem = spec["theorem"]
    fp, sampled = _interval_potential(spec["potential"])
    ns = _n_values(spec["n"])
    n_top = max(ns)
    s_values = _s_values(spec.get("s"))
    basis = spec.get("basis")
    if theorem != "neumann-sum" and theorem != "slope-neumann-sum" and min(ns) < 1:
        raise DomainError(f"{theorem} needs n >= 1")

    def dirichlet():
        return solve(fp, "dirichlet", n_top, basis)

    def neumann():
        return solve(fp, "neumann", n_top + 1, basis)

    reports = []
    if theorem == "dirichlet-sum":
        d = dirichlet()
        reports = [analysis.verify_dirichlet_sum(fp, n, d, tol_scale) for n in ns]
    elif theorem == "neumann-sum":
        nm = neumann()
        reports = [analysis.verify_neumann_sum(fp, n, nm, tol_scale) for n in ns]
    elif theorem == "combined-sum":
        d, nm = dirichlet(), neumann()
        reports = [analysis.verify_combined(fp, n, d, nm, tol_scale) for n in ns]
    elif theorem == "sum-power":
        d, nm = dirichlet(), neumann()
        reports = [analysis.verify_sumpower(fp, n, s, d, nm, tol_scale) for s in s_values for n in ns]
    else:
        if sampled is None:
            raise DomainError(f"{theorem} needs a sampled potential (slopes are tested on the grid)")
        max_index = spec["potential"].get("max_index")
        if theorem == "slope-neumann-sum":
            nm = neumann()
            reports = [analysis.verify_app(sampled, n, "neumann", nm, max_index=max_index, tol_scale=tol_scale) for n in ns]
        elif theorem == "slope-dirichlet-sum":
            d = dirichlet()
            reports = [analysis.verify_app(sampled, n, "dirichlet", d, max_index=max_index, tol_scale=tol_scale) for n in ns]
        else:
            d = dirichlet()
            reports = [
                analysis.verify_app(sampled, n, "zeta", d, s=s, max_index=max_index, tol_scale=tol_scale)
                for s in s_values
                for n in ns
            ]
    return reports


def _verify_torus(job: Job, tol_scale: float) -> list[InequalityReport]:
    spec = job.spec
    if "lattice" not in spec:
        raise DomainError(f"{spec['theorem']} needs a lattice")
    lat, p = _torus_inputs(spec)
    ns = _n_values(spec["n"])
    count = max(ns) + 1
    cutoff = spec.get("cutoff") or default_cutoff(lat, p, count)
    result = eigenvalues_torus(lat, p, count, cutoff)
    if spec["theorem"] == "torus-sum":
        return [analysis.verify_torus_sum(lat, p, n, result, tol_scale) for n in ns]
    if min(ns) < 1:
        raise DomainError("torus-power needs n >= 1")
    return [
        analysis.verify_toruspower(lat, p, n, s, result, tol_scale) for s in _s_values(spec.get("s")) for n in ns
    ]


def run_verify(job: Job, tol_scale: float) -> JobOutcome:
    if job.spec["theorem"] in TORUS_THEOREMS:
        return _report_outcome(_verify_torus(job, tol_scale))
    return _report_outcome(_verify_interval(job, tol_scale))


def run_trace(job: Job, tol_scale: float) -> JobOutcome:
    spec = job.spec
    fp, _ = _interval_potential(spec["potential"])
    n = spec["n"]
    dspec = solve(fp, "dirichlet", n, spec.get("basis"))
    report = analysis.trace_partial_sums(fp, n, dspec)
    status = PASS
    limit = spec.get("max_deviation")
    if limit is not None and not report.max_tail_deviation <= limit * tol_scale:
        status = FAIL
    return JobOutcome(
        ("n", "partial_sum", "target", "deviation"), list(report.rows()), status,
        summary={"target": report.target, "max_tail_deviation": report.max_tail_deviation},
    )


def run_dikii(job: Job, tol_scale: float) -> JobOutcome:
    spec = job.spec
    fp, _ = _interval_potential(spec["potential"])
    report = analysis.dikii_sums(fp, spec["n"], basis_size=spec.get("basis"))
    return JobOutcome(
        ("n", "d_spectral", "d_coefficients", "d_split", "tol"), list(report.rows()),
        PASS if report.passed else FAIL,
        summary={
            "agreement": report.agreement,
            "nonpositive": report.nonpositive,
            "tail_decreasing": report.tail_decreasing,
        },
    )


def run_zeta(job: Job, tol_scale: float) -> JobOutcome:
    spec = job.spec
    reports: list[InequalityReport] = []
    if "lambdas" in spec:
        for key in ("a", "b"):
            if key not in spec:
                raise DomainError(f"zeta bound needs the '{key}' sequence")
        n = spec.get("n", len(spec["lambdas"]))
        for s in _s_values(spec.get("s")):
            reports.append(analysis.abstract_zeta_bound(spec["lambdas"], spec["a"], spec["b"], s, n))
    for i, (lam, s) in enumerate(spec.get("powerrep", []), start=1):
        if lam <= 0 or s <= 0:
            raise DomainError("power representation needs lambda > 0 and s > 0")
        value = analysis.power_representation(lam, s)
        direct = lam**-s
        reports.append(
            InequalityReport("power-representation", i, value, direct, 1e-12 * max(1.0, direct), sense="==")
        )
    if not reports:
        raise DomainError("zeta job needs 'lambdas'/'a'/'b' or 'powerrep' entries")
    return _report_outcome(reports)


def run_counterexample(job: Job, tol_scale: float) -> JobOutcome:
    spec = job.spec
    scan = analysis.counterexample_scan(spec["n"], spec["t"], spec.get("basis"))
    return _report_outcome(scan.reports, slope=None if math.isnan(scan.slope) else scan.slope)


HANDLERS: dict[str, Callable[[Job, float], JobOutcome]] = {
    "interval-spectrum": run_interval_spectrum,
    "torus-spectrum": run_torus_spectrum,
    "verify": run_verify,
    "trace": run_trace,
    "dikii": run_dikii,
    "zeta": run_zeta,
    "counterexample": run_counterexample,
}
