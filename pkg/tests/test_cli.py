import csv
import json

import pytest

from spectral_sums import __version__
from spectral_sums.cli import list_jobs, main, parse_config
from spectral_sums.cli.config import JOB_TYPES
from spectral_sums.errors import ConfigError

COS2X = {"type": "fourier", "coeffs": [0, 0, 1]}

BASIC = {
    "schema": 1,
    "jobs": [
        {"type": "interval-spectrum", "bc": "dirichlet", "n": 3, "potential": {"type": "fourier", "coeffs": [0]}},
        {"type": "verify", "theorem": "dirichlet-sum", "n": {"from": 1, "to": 4}, "potential": COS2X},
        {"type": "verify", "theorem": "combined-sum", "n": [1, 3], "potential": COS2X, "output": "combined.csv"},
        {"type": "trace", "n": 12, "potential": COS2X},
        {"type": "dikii", "n": 6, "potential": COS2X},
        {"type": "zeta", "lambdas": [1, 2], "a": [1, 2], "b": [1.5, 2], "s": [0.5, 1], "powerrep": [[3.0, 0.5]]},
        {"type": "counterexample", "n": 2, "t": [10, 20, 40]},
        {
            "type": "torus-spectrum",
            "n": 4,
            "lattice": {"vectors": [[6.283185307179586]]},
            "potential": {"terms": [{"beta": [2], "re": 1.0}, {"beta": [-2], "re": 1.0}]},
        },
        {"type": "verify", "theorem": "torus-sum", "n": {"from": 0, "to": 3}, "potential": {}, "lattice": {"vectors": [[1, 0], [0, 1]]}},
    ],
}


def write(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc, indent=2) if not isinstance(doc, str) else doc)
    return path


def run(tmp_path, doc, *extra, out="out"):
    cfg = write(tmp_path, doc)
    return main(["run", "--config", str(cfg), "--out", str(tmp_path / out), *extra])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


def test_basic_run_outputs(tmp_path):
    assert run(tmp_path, BASIC) == 0
    out = tmp_path / "out"
    rows = read_csv(out / "job01-interval-spectrum.csv")
    assert rows == [["k", "eigenvalue", "error_estimate"], ["1", "1.0", "0.0"], ["2", "4.0", "0.0"], ["3", "9.0", "0.0"]]
    verify = read_csv(out / "job02-verify.csv")
    assert verify[0] == ["theorem", "n", "lhs", "rhs", "slack", "tol", "status"]
    assert [r[-1] for r in verify[1:]] == ["pass"] * 4
    assert (out / "combined.csv").exists()
    manifest = json.loads((out / "run-manifest.json").read_text())
    assert manifest["version"] == __version__ and manifest["schema"] == 1
    assert manifest["config"] == BASIC and manifest["exit_code"] == 0
    assert [j["status"] for j in manifest["jobs"]] == ["pass"] * len(BASIC["jobs"])


def test_runs_are_byte_identical(tmp_path):
    assert run(tmp_path, BASIC, out="a") == 0
    assert run(tmp_path, BASIC, "--jobs-parallel", out="b") == 0
    for f in sorted((tmp_path / "a").glob("*.csv")):
        assert f.read_bytes() == (tmp_path / "b" / f.name).read_bytes()


def test_manifest_replays_the_run(tmp_path):
    assert run(tmp_path, BASIC, out="a") == 0
    manifest = tmp_path / "a" / "run-manifest.json"
    assert main(["run", "--config", str(manifest), "--out", str(tmp_path / "replay")]) == 0
    for f in sorted((tmp_path / "a").glob("*.csv")):
        assert f.read_bytes() == (tmp_path / "replay" / f.name).read_bytes()


def test_failed_inequality_exits_2(tmp_path):
    doc = {"schema": 1, "jobs": [{"type": "trace", "n": 8, "potential": COS2X, "max_deviation": 1e-6}]}
    assert run(tmp_path, doc) == 2
    manifest = json.loads((tmp_path / "out" / "run-manifest.json").read_text())
    assert manifest["jobs"][0]["status"] == "fail" and manifest["exit_code"] == 2


def test_tolerance_scale_can_rescue_a_borderline_check(tmp_path):
    doc = {"schema": 1, "jobs": [{"type": "trace", "n": 8, "potential": COS2X, "max_deviation": 0.01}]}
    assert run(tmp_path, doc, out="strict") == 2
    assert run(tmp_path, doc, "--tolerance-scale", "10", out="loose") == 0


def test_solver_guard_exits_3(tmp_path, capsys):
    doc = {
        "schema": 1,
        "jobs": [{"type": "torus-spectrum", "n": 3, "cutoff": 40, "lattice": {"vectors": [[1, 0], [0, 1]]}}],
    }
    assert run(tmp_path, doc) == 3
    assert "lower the cutoff" in capsys.readouterr().err


def test_solver_error_outranks_failure(tmp_path):
    doc = {
        "schema": 1,
        "jobs": [
            {"type": "trace", "n": 8, "potential": COS2X, "max_deviation": 1e-6},
            {"type": "torus-spectrum", "n": 3, "cutoff": 40, "lattice": {"vectors": [[1, 0], [0, 1]]}},
        ],
    }
    assert run(tmp_path, doc) == 3


def test_schema_error_exits_4_with_line(tmp_path, capsys):
    text = '{"schema": 1,\n "jobs": [\n  {"type": "trace", "n": 5, "potential": {"type": "fourier", "coeffs": [0]}},\n  {"type": "verify", "theorem": "nope", "n": 1, "potential": {}}\n ]}\n'
    assert run(tmp_path, text) == 4
    err = capsys.readouterr().err
    assert "line 4" in err and "theorem" in err
    assert not (tmp_path / "out").exists()


def test_invalid_parameters_at_run_time_exit_4(tmp_path, capsys):
    doc = {"schema": 1, "jobs": [{"type": "interval-spectrum", "bc": "dirichlet", "n": 10, "basis": 16, "potential": COS2X}]}
    assert run(tmp_path, doc) == 4
    assert "line" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("{not json", "invalid JSON"),
        ('{"schema": 2, "jobs": []}', "schema"),
        ('{"schema": 1, "jobs": [{"type": "dikii", "n": 3}]}', "potential"),
        ('{"schema": 1, "jobs": [{"type": "trace", "n": 3, "potential": {"type": "fourier", "coeffs": [0]}, "bogus": 1}]}', "bogus"),
        ('{"schema": 1, "jobs": [{"type": "zeta", "s": 1, "output": "../x.csv"}]}', "output"),
    ],
)
def test_parse_config_errors(text, fragment):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert fragment in str(info.value)


def test_duplicate_outputs_rejected():
    job = {"type": "dikii", "n": 3, "potential": COS2X, "output": "same.csv"}
    with pytest.raises(ConfigError, match="more than one job"):
        parse_config(json.dumps({"schema": 1, "jobs": [job, job]}, indent=1))


def test_job_names_and_lines():
    cfg = parse_config(json.dumps(BASIC, indent=2))
    assert cfg.jobs[0].name == "job01-interval-spectrum"
    assert cfg.jobs[2].output == "combined.csv"
    lines = [j.line for j in cfg.jobs]
    assert lines == sorted(lines) and lines[0] == 4  # "{", "schema", "jobs": [ precede it


def test_jobs_listing(capsys):
    assert main(["jobs"]) == 0
    text = capsys.readouterr().out
    assert all(t in text for t in JOB_TYPES)
    assert '"type":"fourier"' in text and __version__ in text
    assert text == list_jobs()


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        main(["--version"])
    assert info.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_missing_config_file(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "absent.json"), "--out", str(tmp_path / "o")]) == 4
    assert "cannot read config" in capsys.readouterr().err
