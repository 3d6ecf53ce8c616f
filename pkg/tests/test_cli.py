import json
import random
import subprocess
import sys

import pytest

from morin import cli, curves
from morin import vthreefold as vt
from morin.poly import MultiPoly, Ring

from conftest import validate

SMALL = ["--primes", "31,37,41"]


def run(argv, tmp_path=None, name="out.json"):
    if tmp_path is None:
        return cli.main(argv), None
    path = tmp_path / name
    code = cli.main(argv + ["--json", str(path), "--quiet"])
    return code, json.loads(path.read_text())


@pytest.fixture(scope="module")
def config_lines(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cfg")
    code, out = run(["config", "--lines"] + SMALL, tmp)
    return code, out, tmp / "out.json"


def test_delpezzo_standard(tmp_path):
    code, out = run(["delpezzo", "--standard"], tmp_path)
    assert code == 0
    assert out["counts"] == {"lines": 10, "pencils": 5}
    assert out["discriminant"]["delta_degree"] == 3
    validate("delpezzo_output.json", out)


def test_delpezzo_collinear(capsys):
    code = cli.main(["delpezzo", "--points", "1,0,0;0,1,0;1,1,0;1,2,3"])
    assert code == 2
    assert "collinear" in capsys.readouterr().err


def test_bad_prime(capsys):
    assert cli.main(["delpezzo", "--standard", "--primes", "100"]) == 2
    assert cli.main(["delpezzo", "--standard", "--primes", "abc"]) == 2


def test_delpezzo_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    cli.main(["delpezzo", "--standard", "--json", str(a), "--quiet"])
    cli.main(["delpezzo", "--standard", "--json", str(b), "--quiet"])
    assert a.read_bytes() == b.read_bytes()


def test_config_lines(config_lines):
    code, out, _ = config_lines
    assert code == 0
    assert out["verification"]["verdict"] == "morin"
    assert len(out["configuration"]["planes"]) == 20
    validate("config_output.json", out)


def test_vthreefold_from_config(config_lines, tmp_path):
    _, _, path = config_lines
    code, out = run(["vthreefold", "--from-config", str(path)] + SMALL, tmp_path)
    assert code == 0
    assert out["singular_count"] == out["configuration_length"] - 1 == 19
    validate("vthreefold_output.json", out)


def test_vthreefold_vram(tmp_path):
    code, out = run(["vthreefold", "--vram"] + SMALL, tmp_path)
    assert code == 0
    assert out["singular_count"] == 19 and out["tangential_count"] == 16
    assert out["planes"]["t_x"] == 4 and out["planes"]["t_y"] == 4
    validate("vthreefold_output.json", out)
    for pt in out["singular"]["points"]:
        validate("singular_point.json", pt)


def test_vthreefold_random_coeffs(tmp_path):
    src = tmp_path / "random.json"
    src.write_text(json.dumps({"vector": [str(c) for c in vt.random_form(random.Random(0)).vector()]}))
    code, out = run(["vthreefold", "--coeffs", str(src)] + SMALL, tmp_path)
    assert code == 0 and out["singular_count"] == 0


def test_vthreefold_malformed_coeffs(tmp_path, capsys):
    src = tmp_path / "bad.json"
    src.write_text(json.dumps({"vector": [1, 2, 3]}))
    assert cli.main(["vthreefold", "--coeffs", str(src)] + SMALL) == 2
    src.write_text("{not json")
    assert cli.main(["vthreefold", "--coeffs", str(src)] + SMALL) == 2


def test_config_smooth_path(tmp_path):
    code, out = run(["config", "--smooth-path", "E2,L12,L34,E4"] + SMALL, tmp_path)
    assert code == 0
    assert out["verification"]["length"] == 17
    assert out["smoothing"]["computed_nodes"] == 12
    assert out["genus_identity"]["value"] == 6


def test_config_from_sextic(tmp_path):
    code, out = run(["algebra", "--ten-nodal"], tmp_path, "ten.json")
    assert code == 0
    src = tmp_path / "tennodal.json"
    src.write_text(json.dumps(out["ten_nodal"]))
    code, out = run(["config", "--from-sextic", str(src)] + SMALL, tmp_path)
    assert code == 0 and out["verification"]["length"] == 11


def test_exit_codes_follow_verdict(monkeypatch, tmp_path):
    real = curves.verify_morin

    def incomplete(conf, *a, **k):
        rep = real(conf, *a, **{**k, "completeness": False})
        return rep

    monkeypatch.setattr(curves, "verify_morin", incomplete)
    code, out = run(["config", "--lines"] + SMALL, tmp_path)
    assert out["verification"]["verdict"] == "incident-but-incomplete" and code == 3

    def failing(conf, *a, **k):
        rep = real(conf, *a, **{**k, "completeness": False})
        rep.verdict = "fail"
        return rep

    monkeypatch.setattr(curves, "verify_morin", failing)
    code, _ = run(["config", "--lines"] + SMALL, tmp_path)
    assert code == 4


def test_graph(tmp_path):
    code, out = run(["graph", "--k", "3"], tmp_path)
    assert code == 0 and out["node_count"] == 15
    validate("graph_output.json", out)


def test_algebra_sqrt_and_det(tmp_path):
    r = Ring([("z", 3)])
    x, y, _ = r.gens()
    (tmp_path / "p.json").write_text(json.dumps(((x + y) * (x + y)).to_json()))
    (tmp_path / "m.json").write_text(json.dumps([[x.to_json(), y.to_json()], [y.to_json(), x.to_json()]]))
    code, out = run(["algebra", "--sqrt", str(tmp_path / "p.json"), "--det", str(tmp_path / "m.json")], tmp_path)
    assert code == 0
    assert MultiPoly.from_json(out["sqrt"]) == x + y
    assert MultiPoly.from_json(out["det"]) == x * x - y * y
    (tmp_path / "p.json").write_text(json.dumps((x * x + y * y).to_json()))
    _, out = run(["algebra", "--sqrt", str(tmp_path / "p.json")], tmp_path)
    assert out["sqrt"] is None


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "morin.cli", "graph", "--k", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["genus"] == 6
