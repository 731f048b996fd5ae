import csv
import json

import pytest

from codestab.main import main
from codestab.types import ExitCode


def test_build_writes_artifact(tmp_path) -> None:
    """build toric --L 2 writes the code with its parameters."""
    out = tmp_path / "toric2.json"
    assert main(["build", "toric", "--L", "2", "--out", str(out)]) == ExitCode.OK
    artifact = json.loads(out.read_text())
    assert artifact["n"] == 8
    assert artifact["parameters"]["k"] == 2
    assert artifact["parameters"]["d"] == 2


def test_params_from_artifact(tmp_path) -> None:
    """params reads back what build wrote."""
    code = tmp_path / "rep5.json"
    report = tmp_path / "params.json"
    assert main(["build", "repetition", "--n", "5", "--out", str(code)]) == ExitCode.OK
    assert main(["params", "--code", str(code), "--logicals", "--out", str(report)]) == ExitCode.OK
    result = json.loads(report.read_text())["result"]
    assert result["parameters"]["d"] == 5
    assert len(result["logicals"]) == 1


def test_missing_constructor_parameter() -> None:
    """A family without its parameters is a usage error."""
    assert main(["params", "--family", "repetition"]) == ExitCode.USAGE


def test_soundness_report(tmp_path) -> None:
    """The toric L=2 profile is certified and below M²."""
    out = tmp_path / "soundness.json"
    assert main(["soundness", "--family", "toric", "--L", "2", "--out", str(out)]) == ExitCode.OK
    result = json.loads(out.read_text())["result"]
    assert result["soundness"]["certified"]
    assert result["quadratic_envelope"]

def test_flow_certificate(tmp_path) -> None:
    """ε = 0 is always certified."""
    out = tmp_path / "flow.json"
    args = ["flow", "--epsilon", "0", "--d-s", "4", "--m-max", "10", "--m-check", "100", "--out", str(out)]
    assert main(args) == ExitCode.OK
    assert json.loads(out.read_text())["result"]["certificate"]["valid"]


def test_flow_needs_distance() -> None:
    """Without --d-s or --c-d there is no soundness distance."""
    assert main(["flow", "--epsilon", "0.001"]) == ExitCode.USAGE


def test_spectrum_csv(tmp_path) -> None:
    """One CSV row per grid point, sorted by ε."""
    out = tmp_path / "spectrum.csv"
    args = ["spectrum", "--family", "repetition", "--n", "3", "--epsilons", "0.05,0", "--format", "csv", "--out", str(out)]
    assert main(args) == ExitCode.OK
    rows = list(csv.DictReader(out.read_text().splitlines()))
    assert [float(r["epsilon"]) for r in rows] == [0.0, 0.05]
    assert rows[0]["cluster_size"] == "2"


def test_swt_is_deterministic(capsys) -> None:
    """Equal seeds give byte-identical reports."""
    args = ["swt", "--family", "repetition", "--n", "4", "--epsilon", "0.05", "--seed", "3"]
    outputs = []
    for _ in range(2):
        assert main(args) == ExitCode.OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]


def test_random_perturbation_needs_seed() -> None:
    """two_body without --seed fails validation."""
    assert main(["swt", "--family", "repetition", "--n", "4", "--epsilon", "0.05"]) == ExitCode.USAGE


def test_bad_arguments_exit() -> None:
    """argparse errors leave through SystemExit."""
    with pytest.raises(SystemExit):
        main(["build", "no-such-family"])


def test_suite_flow_group(tmp_path) -> None:
    """A passing group exits 0 and lists its criterion."""
    out = tmp_path / "suite.json"
    assert main(["suite", "--only", "flow", "--out", str(out)]) == ExitCode.OK
    criteria = json.loads(out.read_text())["result"]["criteria"]
    assert [c["group"] for c in criteria] == ["flow"]
