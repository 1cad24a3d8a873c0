import json
import subprocess

import numpy as np
import pytest

from hypb import cli
from hypb.report import strip_runtime


def run(argv):
    """cli.main with usage-error SystemExit folded into the return code."""
    try:
        return cli.main(argv)
    except SystemExit as exc:
        return exc.code


# ---------------------------------------------------------------------------
# argument parsing helpers


def test_parse_grid():
    assert cli.parse_grid("256") == (256, 256)
    assert cli.parse_grid("128:64") == (128, 64)
    for bad in ("0", "-8", "a:b", "1:2:3"):
        with pytest.raises(SystemExit):
            cli.parse_grid(bad)


def test_parse_domain_and_range():
    assert cli.parse_domain("2.8:5.6") == (2.8, 5.6)
    assert cli.parse_range("0.1:30") == (0.1, 30.0)
    for bad in ("2.8", "0:5", "-1:2"):
        with pytest.raises(SystemExit):
            cli.parse_domain(bad)
    with pytest.raises(SystemExit):
        cli.parse_range("30:0.1")


def test_threads_resolution(monkeypatch):
    monkeypatch.delenv("HYPB_THREADS", raising=False)
    assert cli.resolve_threads(None) is None
    assert cli.resolve_threads(2) == 2
    monkeypatch.setenv("HYPB_THREADS", "3")
    assert cli.resolve_threads(None) == 3
    assert cli.resolve_threads(2) == 2  # explicit flag wins
    monkeypatch.setenv("HYPB_THREADS", "many")
    with pytest.raises(SystemExit):
        cli.resolve_threads(None)


# ---------------------------------------------------------------------------
# verify subcommand


def test_verify_pass_prints_one_line_per_subcheck(capsys):
    assert run(["verify", "adjointness"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert all(line.startswith("[PASS]") for line in out[:-1])
    assert out[-1].startswith("PASSED")


def test_verify_unknown_check_is_a_usage_error(capsys):
    assert run(["verify", "no-such-check"]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_numerical_failure_exits_one(capsys):
    # an impossible tolerance forces the live sub-checks below the rounding floor
    assert run(["verify", "structural-identities", "--tol", "1e-20"]) == 1
    out = capsys.readouterr().out
    assert "[FAIL]" in out
    assert out.strip().splitlines()[-1].startswith("FAILED")


def test_verify_json_is_deterministic(capsys):
    assert run(["verify", "adjointness", "--json"]) == 0
    first = json.loads(capsys.readouterr().out)
    assert run(["verify", "adjointness", "--json"]) == 0
    second = json.loads(capsys.readouterr().out)
    assert strip_runtime(first) == strip_runtime(second)
    assert all("runtime_ms" in rec for rec in first)


def test_verify_quadrature_cap(capsys):
    assert run(["verify", "adjointness", "--method", "quadrature",
                "--grid", "256"]) == 2
    assert "--force" in capsys.readouterr().err
    # the override is explicit; adjointness pins its own small grid, so cheap
    assert run(["verify", "adjointness", "--method", "quadrature",
                "--grid", "256", "--force"]) == 0
    capsys.readouterr()


def test_verify_bad_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("HYPB_THREADS", "lots")
    assert run(["verify", "adjointness"]) == 2
    assert "HYPB_THREADS" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# transform subcommand


def test_transform_requires_testfn(capsys):
    assert run(["transform", "--op", "b_down"]) == 2
    capsys.readouterr()


def test_transform_unknown_op(capsys):
    assert run(["transform", "--op", "riesz", "--testfn", "gaussian:c=2,sigma=4"]) == 2
    assert "riesz" in capsys.readouterr().err


@pytest.mark.parametrize("spec", ["nosuch:a=1", "gaussian:zz=1", "gaussian:c"])
def test_transform_rejects_bad_testfn(spec, capsys):
    assert run(["transform", "--op", "b_down", "--testfn", spec, "--grid", "8"]) == 2
    capsys.readouterr()


def test_transform_writes_csv(tmp_path, capsys):
    out = tmp_path / "f.csv"
    assert run(["transform", "--op", "b_down", "--testfn", "gaussian:c=2,sigma=4",
                "--grid", "16", "--out", str(out)]) == 0
    capsys.readouterr()
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "x,y,re,im"
    assert len(lines) == 16 * 16 + 1
    table = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    assert np.all(np.isfinite(table))
    assert np.all(table[:, 1] > 0)  # output lives on the same half-plane grid


def test_transform_stdout_defaults_to_csv(capsys):
    assert run(["transform", "--op", "c", "--testfn", "gaussian:c=2,sigma=4",
                "--grid", "8"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "x,y,re,im"
    assert len(lines) == 8 * 8 + 1


def test_transform_json_metadata(capsys):
    assert run(["transform", "--op", "b_down", "--testfn", "gaussian:c=2,sigma=4",
                "--grid", "32", "--json"]) == 0
    meta = json.loads(capsys.readouterr().out)
    assert meta["op"] == "beurling_down"
    assert meta["grid"]["nx"] == 32
    assert meta["input_l2"] > 0 and meta["output_l2"] > 0


# ---------------------------------------------------------------------------
# whittaker subcommands


def test_tabulate_residual_column_is_small(tmp_path, capsys):
    out = tmp_path / "y.csv"
    assert run(["whittaker", "tabulate", "--family", "Y", "--A", "0", "--B", "1",
                "--range", "0.1:30", "--points", "80", "--out", str(out)]) == 0
    capsys.readouterr()
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "t,re,im,residual"
    assert len(lines) == 81
    resid = np.array([float(line.split(",")[3]) for line in lines[1:]])
    assert resid.max() <= 1e-6


def test_tabulate_json_reports_max_residual(capsys):
    assert run(["whittaker", "tabulate", "--family", "X", "--A", "1", "--B", "0",
                "--points", "60", "--json"]) == 0
    meta = json.loads(capsys.readouterr().out)
    assert meta["family"] == "X"
    assert meta["max_residual"] <= 1e-6


def test_tabulate_rejects_bad_range(capsys):
    assert run(["whittaker", "tabulate", "--family", "Y", "--range", "5:1"]) == 2
    capsys.readouterr()


def test_classify_member_and_nonmember(capsys):
    assert run(["whittaker", "classify", "--testfn", "conjrat:a=1,k=2",
                "--premultiply-M", "--json"]) == 0
    member = json.loads(capsys.readouterr().out)
    assert member["is_cokernel"] is True
    assert member["premultiply_M"] is True

    assert run(["whittaker", "classify", "--testfn", "gaussian:c=2,sigma=4",
                "--json"]) == 0
    bump = json.loads(capsys.readouterr().out)
    assert bump["is_cokernel"] is False


def test_classify_writes_multiplier_table(tmp_path, capsys):
    out = tmp_path / "b2.csv"
    assert run(["whittaker", "classify", "--testfn", "conjrat:a=1,k=2",
                "--premultiply-M", "--out", str(out)]) == 0
    assert "cokernel" in capsys.readouterr().out
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "xi,re,im"
    table = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    assert len(table) > 10
    xi = table[:, 0]
    assert np.all(xi < 0)  # fitted window sits on the decaying side
    # the boundary multiplier for this member is -pi * exp(xi)
    assert np.allclose(table[:, 1], -np.pi * np.exp(xi), rtol=5e-3, atol=1e-6)


def test_classify_requires_testfn(capsys):
    assert run(["whittaker", "classify"]) == 2
    capsys.readouterr()


# ---------------------------------------------------------------------------
# console script


def test_console_script_smoke():
    proc = subprocess.run(["hypb", "verify", "adjointness"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert "PASSED" in proc.stdout
