import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from stationary_ruled.cli import main
from stationary_ruled.mesh import read_obj


def run(tmp_path, *args, name="out"):
    out = tmp_path / name
    code = main([*args, "--out", str(out)])
    return code, out


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def test_generate_writes_mesh_and_directrix(tmp_path):
    code, out = run(tmp_path, "generate", "--family", "sol1", "--grid.ns", "32", "--grid.nt", "8")
    assert code == 0
    verts, faces = read_obj(out / "mesh.obj")
    assert verts.shape == (256, 3) and faces.shape == (2 * 31 * 7, 3)
    res = read_csv(out / "mesh_residual.csv")
    assert len(res) == 256
    rows = read_csv(out / "directrix.csv")
    s = np.array([float(r["s"]) for r in rows])
    x = np.array([float(r["x"]) for r in rows])
    z = np.array([float(r["z"]) for r in rows])
    assert np.allclose(x, -np.sin(s) * np.cos(s)) and np.allclose(z, s)


def test_generate_graph_has_no_directrix(tmp_path):
    code, out = run(tmp_path, "generate", "--family", "wulff", "--grid.nx", "9", "--grid.ny", "9")
    assert code == 0 and (out / "mesh.obj").exists() and not (out / "directrix.csv").exists()


def test_generate_cylinder_directrix(tmp_path):
    code, out = run(tmp_path, "generate", "--family", "cyl_ex1", "--grid.ns", "16")
    assert code == 0
    rows = read_csv(out / "directrix.csv")
    x = np.array([float(r["x"]) for r in rows])
    z = np.array([float(r["z"]) for r in rows])
    assert np.allclose(z, 0.5 * x * x, atol=1e-9)


@pytest.mark.parametrize("family", ["plane", "sol1", "sol2", "sol3", "sol4", "rotational",
                                    "wulff", "cyl_ex1", "cyl_ex2", "cyl_custom"])
def test_verify_passes_for_every_family(tmp_path, family):
    code, out = run(tmp_path, "verify", "--family", family)
    report = json.loads((out / "report.json").read_text())
    assert code == 0 and report["passed"]
    assert report["checks"][0]["name"] == "lambda_residual"


@pytest.mark.parametrize("args", [
    ("--family", "sol1", "--variant", "tan"),
    ("--family", "sol3", "--variant", "arccot"),
    ("--family", "sol4", "--eval_lambda", "1.0"),
])
def test_verify_fails_for_non_stationary_inputs(tmp_path, args):
    code, out = run(tmp_path, "verify", *args)
    report = json.loads((out / "report.json").read_text())
    assert code == 1 and not report["passed"]


def test_coeffs_table(tmp_path):
    code, out = run(tmp_path, "coeffs", "--family", "sol3", "--params.m", "0.8",
                    "--eval_lambda", "1", "--s_samples", "8")
    assert code == 0
    rows = read_csv(out / "coeffs.csv")
    assert len(rows) == 8
    for r in rows:
        assert r["branch"] == "leading"
        # e33 = sqrt(1 - m^2) = 0.6 on this circle, so A5 = 0.6^3 (0.6^2 - 1)
        assert float(r["A5"]) == pytest.approx(-0.13824, rel=1e-10)
        assert float(r["closed_A5"]) == pytest.approx(-0.13824, rel=1e-12)
        assert r["closed_A0"] == ""


def test_coeffs_of_a_stationary_family_vanish(tmp_path):
    code, out = run(tmp_path, "coeffs", "--family", "sol4")
    rows = read_csv(out / "coeffs.csv")
    assert code == 0 and all(r["branch"] == "vertical_solved" for r in rows)
    assert max(abs(float(r[f"A{n}"])) for r in rows for n in range(6)) < 1e-8


def test_ode_report(tmp_path):
    code, out = run(tmp_path, "ode", "--family", "cyl_ex1", "--ode.mesh", "true")
    assert code == 0
    report = json.loads((out / "ode_report.json").read_text())
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["parabola_convergence"]["order_estimate"] > 3.9
    assert checks["cylindrical_balance"]["max_residual"] < 1e-8
    assert (out / "cylinder.obj").exists()
    assert len(read_csv(out / "ode.csv")) == 81


@pytest.mark.parametrize("family", ["rotational", "wulff", "cyl_ex1"])
def test_energy_check(tmp_path, family):
    code, out = run(tmp_path, "energy-check", "--family", family, "--energy.bumps", "2")
    report = json.loads((out / "energy_report.json").read_text())
    assert code == 0 and report["passed"]
    assert [c["name"] for c in report["checks"]] == [
        "pde_stencil", "first_variation_0", "first_variation_1", "negative_control_cubic"]


def test_energy_check_flags_a_wrong_lambda(tmp_path):
    code, _ = run(tmp_path, "energy-check", "--family", "wulff", "--eval_lambda", "7")
    assert code == 1


def test_config_file_and_overrides(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"family": "sol3", "params": {"m": 0.25}, "grid": {"ns": 16}}))
    code, out = run(tmp_path, "verify", "--config", str(cfg), "--params.m", "0.9")
    report = json.loads((out / "report.json").read_text())
    assert code == 0 and report["params"]["m"] == 0.9


def test_seed_is_recorded(tmp_path):
    code, out = run(tmp_path, "verify", "--family", "sol2", "--seed", "11")
    assert code == 0 and json.loads((out / "report.json").read_text())["seed"] == 11


@pytest.mark.parametrize("command, family", [("generate", "sol3"), ("verify", "cyl_custom"),
                                             ("coeffs", "sol1"), ("ode", "cyl_ex2"),
                                             ("energy-check", "rotational")])
def test_outputs_are_byte_identical_across_runs(tmp_path, command, family):
    _, a = run(tmp_path, command, "--family", family, name="a")
    _, b = run(tmp_path, command, "--family", family, name="b")
    files = sorted(p.name for p in a.iterdir())
    assert files and files == sorted(p.name for p in b.iterdir())
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


@pytest.mark.parametrize("args", [
    ("verify",),
    ("verify", "--family", "nope"),
    ("verify", "--family", "sol1", "--grid.ns", "1"),
    ("verify", "--family", "sol1", "stray"),
    ("verify", "--family", "sol1", "--params.c1", "0"),
    ("verify", "--config", "/nonexistent/run.json"),
    ("coeffs", "--family", "wulff"),
    ("ode", "--family", "sol1"),
    ("energy-check", "--family", "sol2"),
])
def test_usage_errors_exit_2(tmp_path, args, capsys):
    code, _ = run(tmp_path, *args)
    assert code == 2
    assert "error:" in capsys.readouterr().err


def test_unknown_command_exits_2(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "--out", str(tmp_path)])
    assert exc.value.code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "stationary_ruled", "verify", "--family",
                           "wulff", "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS lambda_residual" in proc.stdout
