import json

import numpy as np
import pytest

from hermgeo import linalg, sampling, sections
from hermgeo.cli import main
from hermgeo.sections import MetricSection, QuadratureMesh, save_section


def write_matrix(path, mat):
    path.write_text(json.dumps(linalg.matrix_to_json(np.asarray(mat, dtype=complex))))


def conformal_pair(tmp_path):
    mesh = QuadratureMesh(rank=2, ids=[0], weights=[1.0], alphas=[0.0])
    h1 = MetricSection(mesh, np.eye(2, dtype=complex)[None])
    h2 = MetricSection(mesh, np.exp(2.0) * np.eye(2, dtype=complex)[None])
    f1, f2 = tmp_path / "h1.json", tmp_path / "h2.json"
    save_section(h1, str(f1))
    save_section(h2, str(f2))
    return f1, f2


def test_distance_identical(tmp_path, capsys):
    f1, _ = conformal_pair(tmp_path)
    assert main(["distance", str(f1), str(f1)]) == 0
    assert float(capsys.readouterr().out) == 0.0


def test_distance_conformal_pair(tmp_path, capsys):
    f1, f2 = conformal_pair(tmp_path)
    assert main(["distance", str(f1), str(f2)]) == 0
    assert capsys.readouterr().out.strip() == "2.82842712475"


def test_distance_two_point_fixture(tmp_path, capsys):
    mesh = QuadratureMesh(rank=1, ids=[0, 1], weights=[1.0, 1.0],
                          alphas=[0.0, 0.0])
    h1 = MetricSection(mesh, np.ones((2, 1, 1), dtype=complex))
    h2 = MetricSection(mesh, np.array([np.exp(3.0), np.exp(4.0)]
                                      ).reshape(2, 1, 1).astype(complex))
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    save_section(h1, str(f1))
    save_section(h2, str(f2))
    assert main(["distance", str(f1), str(f2)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(5.0, rel=1e-12)


def test_distance_mesh_mismatch(tmp_path, capsys):
    f1, _ = conformal_pair(tmp_path)
    mesh = QuadratureMesh(rank=2, ids=[0], weights=[2.0], alphas=[0.0])
    other = MetricSection(mesh, np.eye(2, dtype=complex)[None])
    f3 = tmp_path / "h3.json"
    save_section(other, str(f3))
    assert main(["distance", str(f1), str(f3)]) != 0


def test_geodesic_trace(tmp_path):
    f1, f2 = conformal_pair(tmp_path)
    out = tmp_path / "trace.csv"
    assert main(["geodesic", str(f1), str(f2), "--steps", "5",
                 "--out", str(out)]) == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1 + 5  # one mesh point
    first = lines[1].split(",")
    last = lines[-1].split(",")
    assert float(first[2]) == pytest.approx(1.0, abs=1e-8)
    assert float(last[2]) == pytest.approx(np.exp(2.0), rel=1e-8)
    mid = lines[3].split(",")
    assert float(mid[2]) == pytest.approx(np.e, rel=1e-8)


def test_curvature_command(tmp_path, capsys):
    write_matrix(tmp_path / "h.json", np.eye(2))
    write_matrix(tmp_path / "u.json", np.diag([1, -1]) / np.sqrt(2))
    write_matrix(tmp_path / "v.json", np.array([[0, 1], [1, 0]]) / np.sqrt(2))
    assert main(["curvature", str(tmp_path / "h.json"), str(tmp_path / "u.json"),
                 str(tmp_path / "v.json"), "--alpha", "0"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["sectional_curvature"] == pytest.approx(-0.5, abs=1e-12)


def test_check_command(tmp_path):
    out = tmp_path / "rep.json"
    assert main(["check", "appendix", "--seed", "3", "--samples", "5",
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["passed"]
    assert rep["tolerances"]["min_singular_value"] == 1e-3


def test_check_determinism(tmp_path):
    o1, o2 = tmp_path / "a.json", tmp_path / "b.json"
    main(["check", "invariants", "--seed", "5", "--samples", "10",
          "--out", str(o1)])
    main(["check", "invariants", "--seed", "5", "--samples", "10",
          "--out", str(o2)])
    assert o1.read_bytes() == o2.read_bytes()


def test_example_raufi_small(tmp_path):
    out = tmp_path / "raufi.json"
    assert main(["example", "raufi", "--nr", "80", "--ntheta", "32",
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["is_l2"]
    assert rep["log_det_sq_integral"] == pytest.approx(8 * np.pi, rel=0.05)
    assert rep["psh_log_det"]["passed"]


def test_example_line_bundle(tmp_path):
    out = tmp_path / "lb.json"
    assert main(["example", "line-bundle", "--nr", "80", "--ntheta", "32",
                 "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["phi_sq_integral"] == pytest.approx(2 * np.pi, rel=0.05)


def test_integrability_command(tmp_path, capsys):
    rng = sampling.make_rng(70)
    mesh = sampling.random_mesh(rng, 2, 4)
    h0 = sampling.random_metric_section(rng, mesh)
    sig = sampling.random_metric_section(rng, mesh)
    fa, fb = tmp_path / "sig.json", tmp_path / "h0.json"
    save_section(sig, str(fa))
    save_section(h0, str(fb))
    assert main(["integrability", str(fa), str(fb)]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["is_l2"]
    assert rep["l2_log_lambda_max"] > 0


def test_completion_demo(tmp_path):
    out = tmp_path / "demo.json"
    assert main(["completion-demo", "--nr", "40", "--ntheta", "16",
                 "--levels", "5", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert len(rep["to_limit"]) == 5
    for direct, formula in zip(rep["to_limit"], rep["to_limit_formula"]):
        assert direct == pytest.approx(formula, rel=1e-10)
    # distances to the limit decrease as the truncation level rises
    assert rep["to_limit"][-1] < rep["to_limit"][0]


def test_fixture_roundtrip(tmp_path):
    f1, _ = conformal_pair(tmp_path)
    sec = sections.load_section(str(f1))
    f2 = tmp_path / "round.json"
    save_section(sec, str(f2))
    assert json.loads(f1.read_text()) == json.loads(f2.read_text())
