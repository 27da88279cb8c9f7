import json
import socket
import subprocess
import sys
import time

import httpx
import pytest

from bellswap.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_table1_json_report(capsys):
    code, out, _ = run_cli(capsys, "table1")
    assert code == 0
    report = json.loads(out)
    assert report["command"] == "table1"
    assert report["pass"] is True
    cells = report["results"]["cells"]
    assert len(cells) == 16
    by_signs = {tuple(c["signs"]): c for c in cells}
    assert by_signs[(1, 1, -1, 1)]["expected"] == 0.125


def test_table1_csv_has_header_and_16_rows(capsys):
    code, out, _ = run_cli(capsys, "--format", "csv", "table1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "zz13,xx13,zx24,xz24,probability,expected,pass"
    assert len(lines) == 17
    assert lines[2] == "+1,+1,+1,-1,0.125000,0.125000,true"


def test_verify_reports_thirteen_properties(capsys):
    code, out, _ = run_cli(capsys, "verify")
    assert code == 0
    report = json.loads(out)
    reports = report["results"]["reports"]
    assert len(reports) == 13
    by_name = {r["property"]: r for r in reports}
    assert by_name["equal_z2_z4_given_z1z3_plus"]["expected"][0] == 1.0
    assert by_name["never_equal_x1_x2"]["expected"] == [0.0]
    assert all(r["pass"] for r in reports)


def test_verify_csv_rows(capsys):
    code, out, _ = run_cli(capsys, "--format", "csv", "verify")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "property,computed,expected,tolerance,pass"
    assert len(lines) == 14


def test_lhv_default_system(capsys):
    code, out, _ = run_cli(capsys, "lhv")
    assert code == 0
    report = json.loads(out)
    assert report["inputs"]["outcome"] is None
    results = report["results"]
    assert results["satisfying_count"] == 0
    assert results["parity_product"] == -1
    assert results["classification"] == "contradiction"


def test_lhv_explainable_outcome(capsys):
    code, out, _ = run_cli(capsys, "lhv", "--outcome", "+1,+1,+1,+1")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["classification"] == "explainable"
    assert results["feasible"] is True


def test_lhv_contradiction_outcome(capsys):
    code, out, _ = run_cli(capsys, "lhv", "--outcome", "+1,-1,+1,+1")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["classification"] == "contradiction"
    assert results["satisfying_count"] == 0


def test_lhv_malformed_outcome_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "lhv", "--outcome", "+1,+1")
    assert code == 2
    assert "outcome" in err


def test_unknown_format_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "--format", "xml", "table1")
    assert code == 2
    assert "invalid choice" in err


def test_sample_runs_must_be_positive(capsys):
    code, _, err = run_cli(capsys, "sample", "--runs", "0", "--seed", "1")
    assert code == 2
    assert "positive" in err


def test_sample_single_run(capsys):
    code, out, _ = run_cli(capsys, "sample", "--runs", "1", "--seed", "9")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["explainable_runs"] == 0
    top = max(results["cells"], key=lambda c: c["frequency"])
    assert top["frequency"] == 1.0


def test_sample_output_is_byte_identical_across_invocations(capsys):
    code1, out1, _ = run_cli(capsys, "sample", "--runs", "400", "--seed", "55")
    code2, out2, _ = run_cli(capsys, "sample", "--runs", "400", "--seed", "55")
    assert code1 == code2 == 0
    assert out1 == out2


def test_sample_csv_cells(capsys):
    code, out, _ = run_cli(capsys, "--format", "csv", "sample", "--runs", "200", "--seed", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "zz13,xx13,zx24,xz24,frequency,expected"
    assert len(lines) == 17


def test_sample_writes_record_files(capsys, tmp_path):
    jsonl_path = tmp_path / "records.jsonl"
    code, _, _ = run_cli(
        capsys, "sample", "--runs", "6", "--seed", "2", "--records", str(jsonl_path)
    )
    assert code == 0
    lines = jsonl_path.read_text().splitlines()
    assert len(lines) == 6
    assert json.loads(lines[0])["run"] == 0

    csv_path = tmp_path / "records.csv"
    code, _, _ = run_cli(
        capsys,
        "--format",
        "csv",
        "sample",
        "--runs",
        "6",
        "--seed",
        "2",
        "--records",
        str(csv_path),
    )
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "run,zz13,xx13,zx24,xz24,classification"
    assert len(lines) == 7


def test_decompose_report(capsys):
    code, out, _ = run_cli(capsys, "decompose")
    assert code == 0
    results = json.loads(out)["results"]
    assert results["nonzero_count"] == 8
    nonzero = [c for c in results["coefficients"] if c["nonzero"]]
    magnitude = 1 / (2 * 2 ** 0.5)
    for entry in nonzero:
        assert entry["magnitude"] == pytest.approx(magnitude, abs=1e-12)
    assert results["sum_squared_magnitudes"] == pytest.approx(1.0, abs=1e-12)


def test_decompose_csv(capsys):
    code, out, _ = run_cli(capsys, "--format", "csv", "decompose")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "first,second,coefficient,magnitude,nonzero"
    assert len(lines) == 17
    assert lines[2] == "phi+,chi-,0.353553,0.353553,true"


def test_table1_determinism(capsys):
    _, out1, _ = run_cli(capsys, "table1")
    _, out2, _ = run_cli(capsys, "table1")
    assert out1 == out2


def test_cli_against_live_server(capsys):
    with socket.socket() as probe:
        probe.bind(("127.0.0.1", 0))
        port = probe.getsockname()[1]
    proc = subprocess.Popen(
        [
            sys.executable,
            "-m",
            "uvicorn",
            "bellswap.service:app",
            "--port",
            str(port),
            "--log-level",
            "error",
        ],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    url = f"http://127.0.0.1:{port}"
    try:
        deadline = time.time() + 20
        while True:
            try:
                if httpx.get(f"{url}/health", timeout=1.0).status_code == 200:
                    break
            except httpx.HTTPError:
                pass
            if time.time() > deadline:
                raise RuntimeError("service did not come up")
            time.sleep(0.2)
        code, remote_out, _ = run_cli(capsys, "--url", url, "verify")
        assert code == 0
        _, local_out, _ = run_cli(capsys, "verify")
        assert remote_out == local_out
    finally:
        proc.terminate()
        proc.wait(timeout=10)


def test_exit_code_one_when_a_check_fails(capsys, monkeypatch):
    import bellswap.cli as cli

    def failing_request(url, method, path, payload=None):
        return {
            "observables": ["Z1Z3", "X1X3", "Z2X4", "X2Z4"],
            "cells": [
                {"signs": [1, 1, 1, 1], "probability": 0.3, "expected": 0.0, "pass": False}
            ],
            "all_pass": False,
        }

    monkeypatch.setattr(cli, "_request", failing_request)
    code, out, _ = run_cli(capsys, "table1")
    assert code == 1
    assert json.loads(out)["pass"] is False
