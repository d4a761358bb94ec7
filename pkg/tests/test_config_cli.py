"""Config parsing/emission and the command line front end."""

import dataclasses
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from pairtrain.cli import main
from pairtrain.config import ConfigError, emit_config, parse_config
from pairtrain.density import master_density
from pairtrain.integrate import grid_scan
from pairtrain.kinematics import ALPHA_FS, SpectrumPoint

MINIMAL = {"train": [{"x": 0.0, "da": [5.0, 0.0]}]}

POINT = {
    "train": [{"x": -1.0, "da": [-5.0, 0.0]}, {"x": 1.0, "da": [5.0, 0.0]}],
    "evaluation": {"u": 0.5, "qperp": [0.0, 0.0]},
}

GRID = {
    "train": [{"x": -1.0, "da": [-2.0, 0.0]}, {"x": 1.0, "da": [2.0, 0.0]}],
    "evaluation": {"u": 0.5, "grid": {"q1": [-2.0, 4.0, 9], "q2": [-1.5, 1.5, 5]}},
    "output": {"breakdown": True},
}

TOTAL = {
    "train": [{"x": 0.0, "da": [0.5, 0.0]}],
    "integration": {"rel_tol": 1e-4, "q_max": 5.0, "u_margin": 0.1},
}


# ----------------------------------------------------------------------
# parsing and emission
# ----------------------------------------------------------------------

def test_minimal_defaults():
    cfg = parse_config(json.dumps(MINIMAL))
    assert cfg.alpha == ALPHA_FS
    assert cfg.probe.lperp == (0.0, 0.0) and cfg.probe.energy_mev is None
    assert cfg.u is None and cfg.qperp is None and cfg.grid is None
    assert cfg.integration.rel_tol == 1e-8
    assert not cfg.bare and not cfg.breakdown and cfg.notes == ()
    assert len(cfg.train) == 1


def test_parse_accepts_dict_and_bytes():
    assert parse_config(MINIMAL) == parse_config(json.dumps(MINIMAL).encode())


def test_emit_parse_round_trip():
    doc = {
        "alpha": 0.007,
        "photon": {"lperp": [0.1, -0.2], "energy_mev": 1000.0},
        "train": [{"x": 1.0, "da": [5.0, 0.0]}, {"x": -1.0, "da": [-5.0, 0.0]}],
        "evaluation": {"u": 0.25, "qperp": [1.5, 0.0],
                       "grid": {"q1": [-8.0, 8.0, 32], "q2": [-4.0, 4.0, 16]}},
        "integration": {"rel_tol": 1e-6, "q_max": 11.0, "max_evals": 1000000},
        "output": {"bare": True, "breakdown": True},
    }
    cfg = parse_config(doc)
    again = parse_config(json.dumps(emit_config(cfg)))
    assert again == dataclasses.replace(cfg, notes=())
    # emission is canonical: a second emit/parse cycle is a fixed point
    assert emit_config(again) == emit_config(cfg)


def test_normalization_notes():
    cfg = parse_config({"train": [{"x": 1.0, "da": [1.0, 0.0]},
                                  {"x": 1.0, "da": [2.0, 0.0]}]})
    assert cfg.notes == ("merged 1 coincident jump(s)",)
    assert len(cfg.train) == 1 and cfg.train.jumps[0].da == (3.0, 0.0)
    cfg = parse_config({"train": [{"x": 1.0, "da": [1.0, 0.0]},
                                  {"x": 1.0, "da": [-1.0, 0.0]},
                                  {"x": 0.0, "da": [1.0, 0.0]}]})
    assert cfg.notes == ("merged 1 coincident jump(s)", "dropped 1 vanishing jump(s)")
    assert len(cfg.train) == 1


@pytest.mark.parametrize("source,pointer,category", [
    ("{not json", "", "syntax"),
    ("[]", "", "schema"),
    ({"trains": []}, "/trains", "schema"),
    ({"alpha": True, **MINIMAL}, "/alpha", "schema"),
    ({"alpha": -1.0, **MINIMAL}, "/alpha", "range"),
    ({"photon": {"lperp": [1.0]}, **MINIMAL}, "/photon/lperp", "schema"),
    ({"photon": {"lperp": [1.0, "a"]}, **MINIMAL}, "/photon/lperp/1", "schema"),
    ({"photon": {"energy_mev": -5.0}, **MINIMAL}, "/photon/energy_mev", "range"),
    ({"photon": {"lperp": [3.0, 0.0], "energy_mev": 1.0}, **MINIMAL},
     "/photon/energy_mev", "range"),
    ({}, "/train", "schema"),
    ({"train": 5}, "/train", "schema"),
    ({"train": [7]}, "/train/0", "schema"),
    ({"train": [{"da": [1.0, 0.0]}]}, "/train/0/x", "schema"),
    ({"train": [{"x": 0.0}]}, "/train/0/da", "schema"),
    ({"train": [{"x": 0.0, "da": [1.0, 0.0], "w": 1}]}, "/train/0/w", "schema"),
    ({"train": [{"x": 0.0, "da": [1.0, 0.0]}, {"x": "a", "da": [1.0, 0.0]}]},
     "/train/1/x", "schema"),
    ('{"train": [{"x": 1e999, "da": [1.0, 0.0]}]}', "/train/0/x", "range"),
    ({"evaluation": {"u": 1.0}, **MINIMAL}, "/evaluation/u", "range"),
    ({"evaluation": {"mode": 1}, **MINIMAL}, "/evaluation/mode", "schema"),
    ({"evaluation": {"grid": {"q1": [0.0, 1.0, 4]}}, **MINIMAL},
     "/evaluation/grid/q2", "schema"),
    ({"evaluation": {"grid": {"q1": [3.0, 1.0, 4], "q2": [0.0, 1.0, 4]}}, **MINIMAL},
     "/evaluation/grid/q1", "range"),
    ({"evaluation": {"grid": {"q1": [0.0, 1.0, 0], "q2": [0.0, 1.0, 4]}}, **MINIMAL},
     "/evaluation/grid/q1/2", "range"),
    ({"evaluation": {"grid": {"q1": [0.0, 1.0, 2.5], "q2": [0.0, 1.0, 4]}}, **MINIMAL},
     "/evaluation/grid/q1/2", "schema"),
    ({"integration": {"rel_tol": 0.0}, **MINIMAL}, "/integration/rel_tol", "range"),
    ({"integration": {"u_margin": 0.7}, **MINIMAL}, "/integration/u_margin", "range"),
    ({"integration": {"max_evals": True}, **MINIMAL}, "/integration/max_evals", "schema"),
    ({"output": {"bare": "yes"}, **MINIMAL}, "/output/bare", "schema"),
])
def test_error_pointers(source, pointer, category):
    with pytest.raises(ConfigError) as info:
        parse_config(source)
    assert info.value.pointer == pointer
    assert info.value.category == category


def test_q_max_null_means_automatic():
    cfg = parse_config({"integration": {"q_max": None}, **MINIMAL})
    assert cfg.integration.q_max is None
    cfg = parse_config({"integration": {"q_max": 5.0}, **MINIMAL})
    assert cfg.integration.q_max == 5.0


# ----------------------------------------------------------------------
# command line
# ----------------------------------------------------------------------

def _write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)

def test_cli_density_stdout(tmp_path, capsys):
    code = main(["density", "--config", _write_config(tmp_path, POINT)])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "density"
    cfg = parse_config(POINT)
    want = master_density(cfg.train, cfg.probe, SpectrumPoint(0.5, (0.0, 0.0)))
    assert doc["value"] == want.value
    assert doc["f_total"] == want.f_total
    assert [c["value"] for c in doc["cross"]] == [t for _, _, _, t in want.cross]
    assert parse_config(doc["config"]) == dataclasses.replace(cfg, notes=())


def test_cli_density_out_file(tmp_path, capsys):
    out = tmp_path / "point.json"
    code = main(["density", "--config", _write_config(tmp_path, POINT),
                 "--out", str(out)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["kind"] == "density"


def test_cli_density_requires_point(tmp_path, capsys):
    doc = {"train": POINT["train"], "evaluation": {"qperp": [0.0, 0.0]}}
    code = main(["density", "--config", _write_config(tmp_path, doc)])
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["pointer"] == "/evaluation/u"
    assert err["error"]["category"] == "schema"


def test_cli_reports_syntax_errors(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{broken")
    assert main(["density", "--config", str(path)]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["category"] == "syntax"
    assert main(["density", "--config", str(tmp_path / "missing.json")]) == 2
    err = json.loads(capsys.readouterr().err)
    assert err["error"]["category"] == "syntax"
    assert "cannot read" in err["error"]["message"]


def test_cli_density_stdin(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(POINT)))
    assert main(["density", "--config", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["kind"] == "density"


def test_cli_notes_on_stderr(tmp_path, capsys):
    doc = {"train": [{"x": 1.0, "da": [1.0, 0.0]}, {"x": 1.0, "da": [1.0, 0.0]}],
           "evaluation": {"u": 0.5, "qperp": [0.0, 0.0]}}
    assert main(["density", "--config", _write_config(tmp_path, doc)]) == 0
    captured = capsys.readouterr()
    assert "note: merged 1 coincident jump(s)" in captured.err


def test_cli_grid_csv(tmp_path, capsys):
    out = tmp_path / "scan.csv"
    code = main(["grid", "--config", _write_config(tmp_path, GRID),
                 "--out", str(out)])
    assert code == 0
    sidecar = json.loads((tmp_path / "scan.csv.meta.json").read_text())
    assert sidecar["kind"] == "grid"
    assert sidecar["csv"] == "scan.csv"
    assert sidecar["columns"] == ["q1", "q2", "density", "diagonal", "cross"]
    assert sidecar["shape"] == [5, 9]
    assert sidecar["u"] == 0.5 and sidecar["bare"] is False

    lines = out.read_text().splitlines()
    assert lines[0] == "q1,q2,density,diagonal,cross"
    assert len(lines) == 1 + 5 * 9
    cfg = parse_config(GRID)
    q1 = np.linspace(-2.0, 4.0, 9)
    q2 = np.linspace(-1.5, 1.5, 5)
    ref = grid_scan(cfg.train, cfg.probe, 0.5, q1, q2)
    # q1 runs fastest; repr round-trips every float exactly
    for row, (i2, i1) in zip(lines[1:], ((i2, i1) for i2 in range(5)
                                         for i1 in range(9))):
        c1, c2, dens, diag, cross = row.split(",")
        assert float(c1) == q1[i1] and float(c2) == q2[i2]
        assert float(dens) == ref.density[i2, i1]
        assert float(diag) == ref.diagonal[i2, i1]
        assert float(cross) == ref.cross[i2, i1]


def test_cli_grid_threads_and_rerun_bitwise(tmp_path, capsys):
    base = tmp_path / "a.csv"
    main(["grid", "--config", _write_config(tmp_path, GRID), "--out", str(base)])
    threaded = tmp_path / "b.csv"
    main(["grid", "--config", _write_config(tmp_path, GRID), "--out", str(threaded),
          "--threads", "4"])
    assert base.read_bytes() == threaded.read_bytes()
    # the sidecar's config echo reproduces the CSV bit for bit
    sidecar = json.loads((tmp_path / "a.csv.meta.json").read_text())
    echo = tmp_path / "c.csv"
    main(["grid", "--config", _write_config(tmp_path, sidecar["config"], "echo.json"),
          "--out", str(echo), "--threads", "3"])
    assert base.read_bytes() == echo.read_bytes()


def test_cli_grid_bare_flag(tmp_path, capsys):
    doc = {"train": GRID["train"],
           "evaluation": {"u": 0.5, "grid": {"q1": [-1.0, 1.0, 3], "q2": [0.0, 0.0, 1]}}}
    out = tmp_path / "bare.csv"
    assert main(["grid", "--config", _write_config(tmp_path, doc),
                 "--out", str(out), "--bare"]) == 0
    sidecar = json.loads((tmp_path / "bare.csv.meta.json").read_text())
    assert sidecar["bare"] is True
    cfg = parse_config(doc)
    row = out.read_text().splitlines()[2].split(",")
    want = master_density(cfg.train, cfg.probe, SpectrumPoint(0.5, (0.0, 0.0)))
    assert float(row[2]) == want.f_total


def test_cli_total(tmp_path, capsys):
    code = main(["total", "--config", _write_config(tmp_path, TOTAL)])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "total"
    assert doc["converged"] is True
    assert doc["q_max"] == 5.0
    assert doc["error"] > 0.0 and doc["value"] > 0.0
    assert doc["neval"] > 0


def test_cli_total_unconverged_exit_code(tmp_path, capsys):
    doc = dict(TOTAL)
    doc["integration"] = {"rel_tol": 1e-10, "q_max": 5.0, "u_margin": 0.1,
                          "max_evals": 20000}
    code = main(["total", "--config", _write_config(tmp_path, doc)])
    assert code == 1
    assert json.loads(capsys.readouterr().out)["converged"] is False


def test_cli_physical_block(tmp_path, capsys):
    doc = {"photon": {"energy_mev": 1000.0}, **POINT}
    assert main(["density", "--config", _write_config(tmp_path, doc)]) == 0
    out = json.loads(capsys.readouterr().out)
    scale = 2.0 * (1000.0 / 0.51099895) / 0.51099895
    assert out["physical"]["x_to_seconds"] == pytest.approx(
        scale * 6.582119569e-22, rel=1e-12)
    assert out["physical"]["x_to_micrometers"] == pytest.approx(
        scale * 1.973269804e-13 * 1e6, rel=1e-12)


def test_cli_validate(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(["validate", "--seed", "7", "--samples", "40", "--out", str(out)])
    report = json.loads(out.read_text())
    assert code == 0 and report["passed"] is True
    assert report["seed"] == 7 and report["samples"] == 40
    assert all(c["passed"] for c in report["checks"])


def test_cli_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "pairtrain.cli", "density", "--config", "-"],
        input=json.dumps(POINT), capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["kind"] == "density"
