import csv
import json

import pytest

from pauli_coherent.cli import bench_cells, main
from pauli_coherent.errors import ConfigError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, dict(line.split(" ", 1) for line in out.out.strip().splitlines() if " " in line)


def test_q1(capsys):
    code, out = run(capsys, "q1", "--p1", "0", "--p2", "0", "--p3", "0")
    assert code == 0 and float(out["q1_raw"]) == 1.0
    code, out = run(capsys, "q1", "--p1", "0.25", "--p2", "0.25", "--p3", "0.25")
    assert float(out["q1_raw"]) == -1.0 and float(out["q1"]) == 0.0


def test_q1_twelve_digits(capsys):
    _, out = run(capsys, "q1", "--p1", "0.225688", "--p2", "0.00801196", "--p3", "0.0263041")
    assert len(out["q1_raw"].replace("-", "").replace(".", "").lstrip("0").split("e")[0]) == 12


def test_q1_invalid(capsys):
    assert main(["q1", "--p1", "0.6", "--p2", "0.6", "--p3", "0"]) == 2


def test_eval_closed(capsys):
    code, out = run(capsys, "eval", "--code", "psi1", "--shots", "2", "--p1", "0", "--p2", "0", "--p3", "0")
    assert code == 0 and float(out["rate"]) == 0.5


def test_eval_phi_gap(capsys):
    _, out = run(capsys, "eval", "--code", "phi1", "--shots", "3", "--p1", "0.00730649",
                 "--p2", "0.240303", "--p3", "0.0223234")
    assert float(out["gap"]) == pytest.approx(0.0127406, abs=1e-4)


def test_eval_check(capsys):
    _, out = run(capsys, "eval", "--code", "chi2", "--check", "--p1", "0.13", "--p2", "0.05", "--p3", "0.21")
    assert float(out["difference"]) <= 1e-9


def test_eval_incompatible(capsys):
    assert main(["eval", "--code", "phi1", "--shots", "2", "--p1", "0", "--p2", "0", "--p3", "0"]) == 2
    assert main(["eval", "--code", "mes", "--closed", "--p1", "0", "--p2", "0", "--p3", "0"]) == 2


def test_eval_mes_numeric(capsys):
    _, out = run(capsys, "eval", "--code", "mes", "--p1", "0.1", "--p2", "0", "--p3", "0")
    assert float(out["rate"]) == pytest.approx(float(out["q1_raw"]), abs=1e-10)


def _toy_config(tmp_path, **extra):
    doc = {"name": "toy", "problem": "toy", "algorithm": "ga", "seed": 3,
           "ga": {"population_size": 20, "generations": 15}, "toy": {"shapes": [[1, 4]]}}
    doc.update(extra)
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(doc))
    return path


def test_optimize_toy(tmp_path, capsys):
    cfg = _toy_config(tmp_path)
    assert main(["optimize", str(cfg), "--out", str(tmp_path / "a")]) == 0
    rows = list(csv.DictReader(open(tmp_path / "a" / "toy_curve.csv")))
    best = [float(r["best_so_far"]) for r in rows]
    assert best == sorted(best) and len(rows) == 16
    res = json.loads((tmp_path / "a" / "toy.json").read_text())
    assert res["best_fitness"] == pytest.approx(best[-1], rel=1e-11)


def test_optimize_byte_reproducible(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"algorithm": "pso", "channel": {"p1": 0.003, "p2": 0.285, "p3": 0.008},
                               "shots": 2, "ansatz": "raw", "save_amplitudes": True,
                               "pso": {"n_particles": 10, "generations": 5}}))
    for d in ("a", "b"):
        assert main(["optimize", str(cfg), "--seed", "9", "--out", str(tmp_path / d)]) == 0
    for f in ("run.json", "run_curve.csv"):
        assert (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes()
    res = json.loads((tmp_path / "a" / "run.json").read_text())
    assert len(res["amplitudes"]) == 16 and res["config"]["seed"] == 9


@pytest.mark.parametrize("bad", [{"bogus": 1}, {"ga": {"population": 3}}, {"algorithm": "sa"},
                                 {"toy": {"shape": [1]}}])
def test_optimize_rejects_unknown(tmp_path, capsys, bad):
    assert main(["optimize", str(_toy_config(tmp_path, **bad))]) == 2


def test_optimize_bad_json(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    assert main(["optimize", str(p)]) == 2


def test_optimize_missing_file(tmp_path, capsys):
    assert main(["optimize", str(tmp_path / "missing.json")]) == 3


def test_optimize_unwritable(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["optimize", str(_toy_config(tmp_path)), "--out", str(blocker / "sub")]) == 3


def test_out_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PAULI_COHERENT_OUT", str(tmp_path / "env"))
    assert main(["compare", "--step", "0.05"]) == 0
    assert (tmp_path / "env" / "compare.csv").exists()


def test_scan_cli(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    code, _ = run(capsys, "scan", "--shots", "3", "--families", "phi,chi", "--step", "0.01",
                  "--out", str(out))
    rows = list(csv.DictReader(open(out)))
    assert code == 0
    assert list(rows[0]) == ["p1", "p2", "p3", "q1_raw", "best_rate", "best_code", "gap", "superadditive"]
    winners = {r["best_code"].split("-")[0] for r in rows if r["superadditive"] == "true"}
    assert winners == {"PHI", "CHI"}


def test_slice_cli(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, info = run(capsys, "slice", "--p3", "0.05", "--shots", "2", "--step", "0.005", "--out", str(out))
    rows = list(csv.DictReader(open(out)))
    assert code == 0 and list(rows[0]) == ["p1", "p2", "value"]
    pos = [r for r in rows if float(r["value"]) > 0]
    assert pos and int(info["positive"]) == len(pos)


def test_compare_cli(tmp_path, capsys):
    _, out = run(capsys, "compare", "--point", "0,0.002,0.382")
    assert out["winner"] == "CHI"
    path = tmp_path / "c.csv"
    assert main(["compare", "--step", "0.02", "--out", str(path)]) == 0
    assert open(path).readline().strip() == "p1,p2,p3,winner,phi_rate,chi_rate"


def test_gapmax_cli(capsys):
    _, out = run(capsys, "gapmax", "--family", "psi", "--shots", "2")
    assert float(out["PSI-I"].split()[1]) == pytest.approx(0.0102342, abs=1e-5)


def test_gapmax_mismatch(capsys):
    assert main(["gapmax", "--family", "phi", "--shots", "2"]) == 2


def test_bench_smoke(tmp_path, capsys):
    cfg = tmp_path / "bench.json"
    cfg.write_text(json.dumps({"trials": 2, "generations": 3, "algorithms": ["ga", "pso"],
                               "ansatz": ["raw"], "nn_depths": [2], "populations": [6],
                               "v_max": [0.5, 2]}))
    assert main(["--threads", "1", "bench", str(cfg), "--out", str(tmp_path / "b")]) == 0
    manifest = json.loads((tmp_path / "b" / "bench_manifest.json").read_text())
    assert len(manifest["cells"]) == 2 + 4
    for cell in manifest["cells"]:
        assert (tmp_path / "b" / cell["file"]).exists()


def test_bench_cells_expand():
    cells = bench_cells({"algorithms": ["pso"], "nn_depths": [2, 3], "v_max": [0.5, 1, 2, 3]})
    assert len(cells) == 8
    assert cells[0]["ansatz"] == "nn:4x4x4x2"
    with pytest.raises(ConfigError):
        bench_cells({"ansatz": ["raw"], "trails": 3})
