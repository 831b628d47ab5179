import math
import sys
from pathlib import Path

import numpy as np
import pytest

from ehscatter import cli
from ehscatter.model import ModeParams, classify_case
from ehscatter._numerics import reduce_mod_pi

GOLDEN_DIR = Path(__file__).parent / "golden"
GOLDEN = {
    "wkb_sweep_2_1.csv": ["wkb-sweep", "--j", "2", "--q", "1", "--beta-min", "1", "--beta-max", "100",
                          "--steps", "12"],
    "eigenvalues_0_0.csv": ["eigenvalues", "--j", "0", "--q", "0", "--count", "2"],
    "compare_0_0.csv": ["compare", "--j", "0", "--q", "0", "--count", "3", "--skip-oracle"],
    "eigenfunction_1_0.csv": ["eigenfunction", "--j", "1", "--q", "0", "--beta", "2", "--method", "wkb",
                              "--z-min", "1.001", "--z-max", "5", "--steps", "20"],
}


def run(argv, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = cli.main(argv + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def parse(text):
    lines = text.splitlines()
    meta = [ln for ln in lines if ln.startswith("#")]
    body = [ln.split(",") for ln in lines if not ln.startswith("#")]
    return meta, body[0], body[1:]


def _cells_match(a, b):
    try:
        x, y = float(a), float(b)
    except ValueError:
        return a == b
    if math.isnan(x) or math.isnan(y):
        return math.isnan(x) and math.isnan(y)
    return x == pytest.approx(y, rel=1e-9, abs=1e-12)


@pytest.fixture(autouse=True)
def _serial(monkeypatch):
    monkeypatch.setenv("HEUN_THREADS", "1")


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden(name, tmp_path):
    code, text = run(GOLDEN[name], tmp_path)
    assert code == 0
    meta, header, rows = parse(text)
    g_meta, g_header, g_rows = parse((GOLDEN_DIR / name).read_text())
    assert meta == g_meta
    assert header == g_header
    assert len(rows) == len(g_rows)
    for r, g in zip(rows, g_rows):
        assert all(_cells_match(a, b) for a, b in zip(r, g)), (r, g)


def test_sweep_deterministic_across_workers(tmp_path, monkeypatch):
    argv = ["wkb-sweep", "--j", "3", "--q", "0", "--beta-min", "0.5", "--beta-max", "40", "--steps", "9"]
    _, one = run(argv, tmp_path, "a.csv")
    _, again = run(argv, tmp_path, "b.csv")
    monkeypatch.setenv("HEUN_THREADS", "3")
    _, three = run(argv, tmp_path, "c.csv")
    assert one == again == three


def test_worker_count(monkeypatch):
    monkeypatch.setenv("HEUN_THREADS", "2")
    assert cli.worker_count() == 2
    monkeypatch.delenv("HEUN_THREADS")
    assert cli.worker_count() >= 1


@pytest.mark.parametrize("args,line", [
    (("1", "0", "2"), "III a=1"),
    (("0", "0", "1"), "IV a=0"),
    (("2", "1", "4"), "I a=1.5 b=0.25 z0=1.64620079261"),
    (("3", "0", "12"), "III a=1"),
])
def test_classify_lines(args, line, capsys):
    j, q, beta = args
    assert cli.main(["classify", "--j", j, "--q", q, "--beta", beta]) == 0
    assert capsys.readouterr().out.strip() == line


def test_classify_z0_near_quoted():
    z0 = float(cli.classify_line(ModeParams(2, 1, 4)).split("z0=")[1])
    assert z0 == pytest.approx(1.648, abs=5e-3)


@pytest.mark.parametrize("argv", [
    ["classify", "--j", "1", "--q", "2", "--beta", "1"],
    ["classify", "--j", "1", "--q", "0", "--beta", "-2"],
    ["wkb-sweep", "--j", "1", "--q", "0", "--beta-min", "5", "--beta-max", "1"],
    ["eigenfunction", "--j", "1", "--q", "0", "--beta", "2", "--method", "wkb", "--z-min", "0.5"],
])
def test_bad_input_exit_2(argv):
    assert cli.main(argv) == cli.EXIT_INPUT


def test_bad_tolerance_exit_2():
    assert cli.main(["classify", "--j", "0", "--q", "0", "--beta", "1", "--tol-ode", "-1"]) == cli.EXIT_INPUT


def test_search_exhausted_exit_3(tmp_path):
    code, text = run(["eigenvalues", "--j", "0", "--q", "0", "--count", "5", "--beta-max", "50"], tmp_path)
    assert code == cli.EXIT_SEARCH and text is None


def test_numerical_failure_exit_4(tmp_path):
    code, _ = run(["compare", "--j", "0", "--q", "0", "--count", "1", "--tol-fit", "1e-15"], tmp_path)
    assert code == cli.EXIT_NUMERIC


def test_case_III_sweep_row(tmp_path):
    code, text = run(["wkb-sweep", "--j", "1", "--q", "0", "--beta-min", "1", "--beta-max", "3",
                      "--steps", "3"], tmp_path)
    _, header, rows = parse(text)
    row = dict(zip(header, rows[1]))
    assert float(row["beta"]) == 2.0 and row["case"] == "III"
    assert float(row["delta_wkb"]) == pytest.approx(-math.sqrt(16.0) + math.pi / 4, abs=1e-12)


def test_sweep_ordering_of_families(tmp_path):
    curves = []
    for j in range(1, 11):
        _, text = run(["wkb-sweep", "--j", str(j), "--q", "1", "--beta-min", "1", "--beta-max", "100",
                       "--steps", "6"], tmp_path, f"s{j}.csv")
        curves.append([float(r[1]) for r in parse(text)[2]])
    # higher j gives a lower curve at every beta
    assert np.all(np.diff(np.array(curves), axis=0) < 0)


def test_eigenvalues_contract(tmp_path):
    _, text = run(GOLDEN["eigenvalues_0_0.csv"], tmp_path)
    _, header, rows = parse(text)
    col = {h: i for i, h in enumerate(header)}
    betas = [float(r[col["beta_n"]]) for r in rows]
    assert all(a < b for a, b in zip(betas, betas[1:]))
    for r in rows:
        assert abs(float(r[col["P_est"]]) + 1 / math.pi) < 1e-3
        assert float(r[col["delta_exact_mod_pi"]]) == pytest.approx(-math.pi / 4, abs=1e-12)


def test_compare_00_within_bound(tmp_path, capsys):
    code, text = run(["compare", "--j", "0", "--q", "0", "--count", "5"], tmp_path)
    _, header, rows = parse(text)
    col = {h: i for i, h in enumerate(header)}
    for r in rows:
        assert abs(float(r[col["diff_mod_pi"]])) <= float(r[col["err_bound"]])
        assert abs(float(r[col["oracle_diff"]])) < 1e-3
    assert "bound_violations=0" in capsys.readouterr().out


def test_compare_case_tags_across_boundary(tmp_path):
    # (10,0): beta_1 sits below j(j+1) = 110 and beta_2 above it
    _, text = run(["compare", "--j", "10", "--q", "0", "--count", "2", "--skip-oracle"], tmp_path)
    _, header, rows = parse(text)
    tags = [r[2] for r in rows]
    assert tags == ["II", "IV"]
    for r in rows:
        assert r[2] == classify_case(ModeParams(10, 0, float(r[1]))).tag.value


def test_compare_case_tags_90(tmp_path):
    _, text = run(["compare", "--j", "9", "--q", "0", "--count", "3", "--skip-oracle"], tmp_path)
    for r in parse(text)[2]:
        assert r[2] == classify_case(ModeParams(9, 0, float(r[1]))).tag.value


@pytest.mark.parametrize("x", [0.3, -2.9, 7.1, 1e3])
def test_mod_pi_idempotent(x):
    assert reduce_mod_pi(reduce_mod_pi(x)) == reduce_mod_pi(x)


def _eigenfunction(method, j, q, beta, z_min, z_max, steps=40):
    cfg = cli.RunConfig("eigenfunction", j=j, q=q, beta=beta, method=method, z_min=z_min, z_max=z_max,
                        steps=steps)
    return cli.eigenfunction_rows(cfg)[1]


def test_oracle_vs_frobenius_eigenfunction():
    ora = _eigenfunction("oracle", 1, 0, "2.6", 1.0001, 2.6)
    fro = _eigenfunction("frobenius", 1, 0, "2.6", 1.0001, 2.6)
    for (z, a), (_, b) in zip(ora, fro):
        assert a == pytest.approx(b, rel=1e-8, abs=1e-12)


def test_frobenius_out_of_disk_exit_2():
    argv = ["eigenfunction", "--j", "1", "--q", "0", "--beta", "2.6", "--method", "frobenius", "--z-max", "5"]
    assert cli.main(argv) == cli.EXIT_INPUT


def test_case_III_wkb_limit():
    rows = _eigenfunction("wkb", 1, 0, "2", 1.000001, 1.00001, 3)
    assert rows[0][2] == pytest.approx(1 / math.sqrt(2), abs=1e-3)


def test_eigenfunction_slope_q_over_2():
    rows = _eigenfunction("oracle", 3, 2, "4.1", 1.00001, 1.0001, 2)
    (z1, a1), (z2, a2) = rows
    slope = math.log(abs(a2 / a1)) / math.log((z2 - 1) / (z1 - 1))
    assert slope == pytest.approx(1.0, abs=0.01)


def regenerate():
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in GOLDEN.items():
        assert cli.main(argv + ["--out", str(GOLDEN_DIR / name)]) == 0


if __name__ == "__main__" and "--regen" in sys.argv:
    regenerate()
