"""``spectral-sums`` command line: batch verification runs driven by a JSON config.

Exit codes: 0 every applicable check passed, 2 some inequality failed,
3 a solver error occurred, 4 the config (or a job's parameters) is invalid.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import platform
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .. import __version__
from ..errors import ConfigError, SolverError, SpectralSumsError
from .config import JOB_TYPES, SCHEMA_VERSION, THEOREMS, Job, VerificationConfig, load_config
from .jobs import FAIL, HANDLERS, JobOutcome

log = logging.getLogger("spectral_sums")

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_SOLVER = 3
EXIT_CONFIG = 4

MANIFEST_NAME = "run-manifest.json"

_JOB_HELP = {
    "interval-spectrum": 'potential, bc ("dirichlet"|"neumann"), n; optional basis, method ("galerkin"|"finite-difference"), grid',
    "torus-spectrum": "lattice, n; optional potential (terms), cutoff",
    "verify": "theorem, potential, n (int, list or {\"from\",\"to\"}); optional s, basis, lattice, cutoff",
    "trace": "potential, n; optional basis, max_deviation",
    "dikii": "potential, n; optional basis",
    "zeta": "lambdas, a, b, n, s and/or powerrep ([[lambda, s], ...])",
    "counterexample": "n, t (list of amplitudes); optional basis",
}


def list_jobs() -> str:
    lines = [
        f"spectral-sums {__version__} (config schema {SCHEMA_VERSION})",
        "",
        "Job types:",
    ]
    width = max(len(name) for name in JOB_TYPES)
    lines += [f"  {name:<{width}}  {_JOB_HELP[name]}" for name in JOB_TYPES]
    lines += [
        "",
        "verify theorems: " + ", ".join(THEOREMS),
        "",
        "Config excerpt:",
        '  {"schema": 1, "jobs": [',
        '    {"type": "verify", "theorem": "dirichlet-sum", "n": {"from": 1, "to": 5},',
        '     "potential": {"type":"fourier","coeffs":[0, 0, 1]}},',
        '    {"type": "interval-spectrum", "bc": "neumann", "n": 4,',
        '     "potential": {"type":"sampled","grid":16,"values":[...17 numbers...]}},',
        '    {"type": "torus-spectrum", "n": 5, "lattice": {"vectors": [[6.283185307179586]]},',
        '     "potential": {"terms": [{"beta":[2], "re":1.0, "im":0.0}, {"beta":[-2], "re":1.0, "im":0.0}]}}',
        "  ]}",
        "Every job accepts optional name, output (file name ending in .csv) and tolerance_scale.",
        "",
        "Exit codes: 0 all applicable checks pass, 2 an inequality failed, 3 solver error, 4 invalid config.",
    ]
    return "\n".join(lines) + "\n"


def _format(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def render_csv(outcome: JobOutcome) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(outcome.header)
    for row in outcome.rows:
        writer.writerow([_format(v) for v in row])
    return buf.getvalue()


def _execute(job: Job, out_dir: Path, tol_scale: float) -> dict:
    start = time.perf_counter()
    entry = {"index": job.index, "type": job.type, "name": job.name, "output": job.output, "line": job.line}
    try:
        outcome = HANDLERS[job.type](job, tol_scale * job.spec.get("tolerance_scale", 1.0))
    except SolverError as exc:
        entry.update(status="error", error="solver", message=str(exc))
    except (SpectralSumsError, ValueError) as exc:
        entry.update(status="error", error="config", message=str(exc))
    else:
        (out_dir / job.output).write_text(render_csv(outcome))
        entry.update(status=outcome.status, rows=len(outcome.rows), summary=outcome.summary)
    entry["seconds"] = round(time.perf_counter() - start, 6)
    return entry


def _exit_code(entries: list[dict]) -> int:
    if any(e.get("error") == "config" for e in entries):
        return EXIT_CONFIG
    if any(e.get("error") == "solver" for e in entries):
        return EXIT_SOLVER
    if any(e["status"] == FAIL for e in entries):
        return EXIT_FAILED
    return EXIT_OK


def run(config_path, out_dir, parallel: bool = False, tolerance_scale: float = 1.0) -> int:
    """Execute every job in the config, writing one CSV per job plus a manifest."""
    started = datetime.now(timezone.utc)
    try:
        config: VerificationConfig = load_config(config_path)
    except ConfigError as exc:
        print(f"{config_path}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if not tolerance_scale > 0:
        print("--tolerance-scale must be positive", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    if parallel and len(config.jobs) > 1:
        with ThreadPoolExecutor() as pool:
            entries = list(pool.map(lambda j: _execute(j, out, tolerance_scale), config.jobs))
    else:
        entries = [_execute(job, out, tolerance_scale) for job in config.jobs]

    for entry in entries:
        if entry["status"] == "error":
            where = f"line {entry['line']}: " if entry.get("line") else ""
            print(f"{config_path}: {where}job {entry['name']}: {entry['message']}", file=sys.stderr)
        else:
            log.info("%s: %s (%d rows)", entry["name"], entry["status"], entry["rows"])

    code = _exit_code(entries)
    canonical = json.dumps(config.document, sort_keys=True)
    manifest = {
        "tool": "spectral-sums",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "config_path": str(config_path),
        "config_sha256": hashlib.sha256(canonical.encode()).hexdigest(),
        "config": config.document,
        "options": {"jobs_parallel": parallel, "tolerance_scale": tolerance_scale},
        "environment": {"python": platform.python_version(), "numpy": np.__version__},
        "started": started.isoformat(),
        "finished": datetime.now(timezone.utc).isoformat(),
        "jobs": entries,
        "exit_code": code,
    }
    (out / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2, default=float) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-sums",
        description="Schroedinger eigenvalue sums: spectra, inequality checks and trace-sum convergence.",
        epilog="job types: " + ", ".join(JOB_TYPES) + '  (see "spectral-sums jobs" for the config schema)',
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run every job of a config file")
    run_p.add_argument("--config", required=True, help="JSON config (or a run manifest to replay)")
    run_p.add_argument("--out", required=True, help="output directory for CSVs and the manifest")
    run_p.add_argument("--jobs-parallel", action="store_true", help="run independent jobs concurrently")
    run_p.add_argument("-v", "--verbose", action="store_true", help="log per-job progress")
    run_p.add_argument("--tolerance-scale", type=float, default=1.0, help="multiply every pass tolerance")

    sub.add_parser("jobs", help="list job types and the config schema")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING, format="%(message)s")
    if args.command == "jobs":
        sys.stdout.write(list_jobs())
        return EXIT_OK
    return run(args.config, args.out, args.jobs_parallel, args.tolerance_scale)


if __name__ == "__main__":
    sys.exit(main())
