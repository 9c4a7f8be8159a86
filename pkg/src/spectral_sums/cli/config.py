"""Verification config: a versioned JSON document listing jobs.

Structural checks use a JSON Schema; failures are reported with the line
of the offending job so they can be fixed in the source file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema

from ..errors import ConfigError

SCHEMA_VERSION = 1

JOB_TYPES = (
    "interval-spectrum",
    "torus-spectrum",
    "verify",
    "trace",
    "dikii",
    "zeta",
    "counterexample",
)

THEOREMS = (
    "dirichlet-sum",
    "neumann-sum",
    "combined-sum",
    "sum-power",
    "slope-dirichlet-sum",
    "slope-neumann-sum",
    "slope-zeta",
    "torus-sum",
    "torus-power",
)
TORUS_THEOREMS = ("torus-sum", "torus-power")

_number_list = {"type": "array", "items": {"type": "number"}}

_interval_potential = {
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "coeffs"],
            "properties": {
                "type": {"const": "fourier"},
                "coeffs": {**_number_list, "minItems": 1},
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["type", "grid", "values"],
            "properties": {
                "type": {"const": "sampled"},
                "grid": {"type": "integer", "minimum": 8, "multipleOf": 2},
                "values": {**_number_list, "minItems": 9},
                "max_index": {"type": "integer", "minimum": 0},
            },
            "additionalProperties": False,
        },
    ]
}

_torus_potential = {
    "type": "object",
    "properties": {
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["beta"],
                "properties": {
                    "beta": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
                    "re": {"type": "number"},
                    "im": {"type": "number"},
                },
                "additionalProperties": False,
            },
        }
    },
    "additionalProperties": False,
}

_lattice = {
    "type": "object",
    "required": ["vectors"],
    "properties": {
        "vectors": {
            "type": "array",
            "minItems": 1,
            "maxItems": 4,
            "items": {**_number_list, "minItems": 1},
        }
    },
    "additionalProperties": False,
}

_n_spec = {
    "oneOf": [
        {"type": "integer", "minimum": 0},
        {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
        {
            "type": "object",
            "required": ["from", "to"],
            "properties": {"from": {"type": "integer", "minimum": 0}, "to": {"type": "integer", "minimum": 0}},
            "additionalProperties": False,
        },
    ]
}

_s_spec = {"oneOf": [{"type": "number", "exclusiveMinimum": 0}, {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 1}]}

_common = {
    "type": {"enum": list(JOB_TYPES)},
    "name": {"type": "string"},
    "output": {"type": "string", "pattern": r"^[A-Za-z0-9._-]+\.csv$"},
    "tolerance_scale": {"type": "number", "exclusiveMinimum": 0},
}


def _job(type_name: str, required: list[str], properties: dict) -> dict:
    return {
        "if": {"properties": {"type": {"const": type_name}}, "required": ["type"]},
        "then": {
            "required": required,
            "properties": {**_common, **properties},
            "additionalProperties": False,
        },
    }


JOB_SCHEMA = {
    "type": "object",
    "required": ["type"],
    "properties": {"type": {"enum": list(JOB_TYPES)}},
    "allOf": [
        _job(
            "interval-spectrum",
            ["potential", "bc", "n"],
            {
                "potential": _interval_potential,
                "bc": {"enum": ["dirichlet", "neumann"]},
                "n": {"type": "integer", "minimum": 1},
                "basis": {"type": "integer", "minimum": 8},
                "method": {"enum": ["galerkin", "finite-difference"]},
                "grid": {"type": "integer", "minimum": 64},
            },
        ),
        _job(
            "torus-spectrum",
            ["lattice", "n"],
            {
                "lattice": _lattice,
                "potential": _torus_potential,
                "n": {"type": "integer", "minimum": 1},
                "cutoff": {"type": "integer", "minimum": 1},
            },
        ),
        _job(
            "verify",
            ["theorem", "potential", "n"],
            {
                "theorem": {"enum": list(THEOREMS)},
                "potential": {"type": "object"},
                "lattice": _lattice,
                "n": _n_spec,
                "s": _s_spec,
                "basis": {"type": "integer", "minimum": 8},
                "cutoff": {"type": "integer", "minimum": 1},
            },
        ),
        _job(
            "trace",
            ["potential", "n"],
            {
                "potential": _interval_potential,
                "n": {"type": "integer", "minimum": 1},
                "basis": {"type": "integer", "minimum": 8},
                "max_deviation": {"type": "number", "exclusiveMinimum": 0},
            },
        ),
        _job(
            "dikii",
            ["potential", "n"],
            {
                "potential": _interval_potential,
                "n": {"type": "integer", "minimum": 1},
                "basis": {"type": "integer", "minimum": 8},
            },
        ),
        _job(
            "zeta",
            [],
            {
                "lambdas": _number_list,
                "a": _number_list,
                "b": _number_list,
                "n": {"type": "integer", "minimum": 1},
                "s": _s_spec,
                "powerrep": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                },
            },
        ),
        _job(
            "counterexample",
            ["n", "t"],
            {
                "n": {"type": "integer", "minimum": 1},
                "t": {**_number_list, "minItems": 1},
                "basis": {"type": "integer", "minimum": 8},
            },
        ),
    ],
}

CONFIG_SCHEMA = {
    "type": "object",
    "required": ["schema", "jobs"],
    "properties": {
        "schema": {"const": SCHEMA_VERSION},
        "jobs": {"type": "array", "items": JOB_SCHEMA},
    },
}


@dataclass(frozen=True)
class Job:
    index: int
    type: str
    spec: dict
    line: int | None = None

    @property
    def name(self) -> str:
        return self.spec.get("name", f"job{self.index + 1:02d}-{self.type}")

    @property
    def output(self) -> str:
        return self.spec.get("output", f"job{self.index + 1:02d}-{self.type}.csv")


@dataclass(frozen=True)
class VerificationConfig:
    document: dict
    jobs: list[Job] = field(default_factory=list)
    source: str | None = None


def _job_lines(text: str) -> list[int]:
    """1-based line on which each element of the top-level ``jobs`` array starts."""
    decoder = json.JSONDecoder()
    lines: list[int] = []
    key = text.find('"jobs"')
    if key < 0:
        return lines
    pos = text.find("[", key)
    if pos < 0:
        return lines
    pos += 1
    while pos < len(text):
        while pos < len(text) and text[pos] in " \t\r\n,":
            pos += 1
        if pos >= len(text) or text[pos] == "]":
            break
        lines.append(text.count("\n", 0, pos) + 1)
        try:
            _, pos = decoder.raw_decode(text, pos)
        except json.JSONDecodeError:
            break
    return lines


def _unwrap_manifest(document):
    # a run manifest embeds the config it was produced from
    if isinstance(document, dict) and isinstance(document.get("config"), dict) and "jobs" in document["config"]:
        return document["config"]
    return document


def parse_config(text: str, source: str | None = None) -> VerificationConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from None
    document = _unwrap_manifest(raw)
    if document is not raw:
        # line anchors then refer to the embedded config as re-serialized
        text = json.dumps(document, indent=2)
    lines = _job_lines(text)

    validator = jsonschema.Draft202012Validator(CONFIG_SCHEMA)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        error = errors[0]
        path = list(error.absolute_path)
        line = None
        if len(path) >= 2 and path[0] == "jobs" and isinstance(path[1], int) and path[1] < len(lines):
            line = lines[path[1]]
        where = "/".join(str(p) for p in path) or "<root>"
        raise ConfigError(f"schema violation at {where}: {error.message}", line=line)

    jobs = [
        Job(i, spec["type"], spec, lines[i] if i < len(lines) else None)
        for i, spec in enumerate(document["jobs"])
    ]
    outputs = [job.output for job in jobs]
    for job in jobs:
        if outputs.count(job.output) > 1:
            raise ConfigError(f"output file {job.output!r} is used by more than one job", line=job.line)
        if job.output == "run-manifest.json":
            raise ConfigError("output name collides with the run manifest", line=job.line)
    return VerificationConfig(document, jobs, source)


def load_config(path) -> VerificationConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))
