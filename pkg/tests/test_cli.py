import subprocess
import sys

import numpy as np
import pytest

from magiclab import linalg, phasespace as ps, stateio


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "magiclab", *args],
                          capture_output=True, text=True)


@pytest.fixture(scope="module")
def strange_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("states") / "strange.txt"
    stateio.write_state(path, linalg.strange_state())
    return str(path)


def test_wigner_command(strange_file):
    res = run_cli("wigner", "--state", strange_file)
    assert res.returncode == 0
    lines = res.stdout.strip().splitlines()
    grid = np.array([[float(x) for x in ln.split(",")] for ln in lines[:3]])
    expect = ps.wigner(linalg.dm_from_pure(linalg.strange_state()))
    assert np.allclose(grid, expect, atol=1e-15)
    assert lines[3].startswith("# sum_negativity=")
    assert "mana=" in lines[3]


def test_wigner_command_mana_base(strange_file):
    trailer = run_cli("wigner", "--state", strange_file).stdout.strip().splitlines()[3]
    nat = float(trailer.split("mana=")[1])
    trailer2 = run_cli("wigner", "--state", strange_file,
                       "--mana-base", "2").stdout.strip().splitlines()[3]
    base2 = float(trailer2.split("mana=")[1])
    assert abs(base2 - nat / np.log(2)) < 1e-12


def test_monotones_command(strange_file):
    res = run_cli("monotones", "--state", strange_file)
    assert res.returncode == 0
    values = dict(ln.split("=") for ln in res.stdout.strip().splitlines())
    assert abs(float(values["sum_negativity"]) - 2 / 3) < 1e-10
    assert abs(float(values["l1_coherence"]) - 1) < 1e-10
    assert abs(float(values["distance_magic"]) - 0.5) < 1e-6


def test_monotones_command_with_dims(tmp_path):
    vec = np.zeros(6, dtype=complex)
    vec[0] = vec[3] = 1 / np.sqrt(2)
    path = tmp_path / "bell.txt"
    stateio.write_state(path, linalg.dm_from_pure(vec))
    res = run_cli("monotones", "--state", str(path), "--dims", "3,2")
    assert res.returncode == 0
    values = dict(ln.split("=") for ln in res.stdout.strip().splitlines())
    assert abs(float(values["negativity"]) - 0.5) < 1e-10


def test_stab_list_round_trips():
    res = run_cli("stab", "--dim", "3", "--list")
    assert res.returncode == 0
    blocks = [b for b in res.stdout.split("\n\n") if b.strip()]
    assert len(blocks) == 12
    kets = [stateio.loads_state(b) for b in blocks]
    assert all(abs(np.linalg.norm(k) - 1) < 1e-12 for k in kets)


def test_stab_distance(strange_file):
    res = run_cli("stab", "--dim", "3", "--distance", strange_file)
    assert res.returncode == 0
    values = dict(ln.split("=", 1) for ln in res.stdout.strip().splitlines())
    assert abs(float(values["distance"]) - 0.5) < 1e-6
    assert values["converged"] == "True"
    weights = [float(x) for x in values["weights"].split(",")]
    assert abs(sum(weights) - 1) < 1e-9


def test_audit_command_exit_codes():
    res = run_cli("audit", "--suite", "selective", "--n", "50", "--seed", "3")
    assert res.returncode == 0
    assert "passed=True" in res.stdout
    res = run_cli("audit", "--suite", "gso", "--n", "100", "--seed", "3")
    assert res.returncode == 0


def test_sweep_command(tmp_path):
    out = tmp_path / "sweep.csv"
    res = run_cli("sweep", "--out", str(out))
    assert res.returncode == 0
    assert out.exists()
    header = out.read_text().splitlines()[0]
    assert header.startswith("p,msn_strange_white")


def test_usage_error_exit_code():
    assert run_cli().returncode == 2
    assert run_cli("stab", "--bogus").returncode == 2
    res = run_cli("wigner", "--state", "/nonexistent/state.txt")
    assert res.returncode == 1
    assert "error:" in res.stderr


def test_run_all_two_processes_byte_identical(tmp_path):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("samples=500\nresult1_trials=60\nlp_trials=20\n"
                   "selective_trials=20\ngso_trials=60\n")
    res_a = run_cli("run-all", "--seed", "11", "--config", str(cfg),
                    "--out", str(tmp_path / "a"))
    res_b = run_cli("run-all", "--seed", "11", "--config", str(cfg),
                    "--out", str(tmp_path / "b"))
    assert res_a.returncode == 0 and res_b.returncode == 0
    assert "overall=PASS" in res_a.stdout
    for name in ("sweep.csv", "coherence_scatter.csv", "entanglement_scatter.csv", "audits.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
