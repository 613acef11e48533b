import json
import shutil
import subprocess

import pytest

from ofs import io
from ofs.calculus import enumerate_cuts, split
from ofs.cli import main
from ofs.fixtures import named

N = named()


@pytest.mark.parametrize("name", sorted(N))
def test_document_round_trip(name):
    S = N[name]
    assert io.loads(io.dumps(S)) == S


def test_round_trip_keeps_interface_flags():
    S = N["SFig"]
    for cut in enumerate_cuts(S):
        for part in split(S, cut):
            assert io.loads(io.dumps(part)) == part


def test_empty_domain_document_shape():
    doc = io.to_document(N["B0"])
    assert doc["delta"]["alpha"] == {"empty": "x0"}
    assert doc["faces"] == {"0": ["x0"], "1": ["b"], "2": ["alpha"]}


@pytest.mark.parametrize("text, fragment", [
    ("{\n  \"faces\": {\"0\": [\"x\"]},\n}", "line 3"),
    ("[]", "expected a JSON object"),
    ('{"faces": {"0": ["x"]}, "extra": 1}', "unknown keys"),
    ('{"faces": {"a": ["x"]}}', "faces.a"),
    ('{"faces": {"0": ["x"], "1": ["e"]}, "gamma": {"e": "q"}, "delta": {"e": ["x"]}}', "DanglingName"),
    ('{"faces": {"0": ["x"], "1": ["e"]}, "gamma": {"e": "x"}, "delta": {"e": 3}}', "delta.e"),
    ('{"faces": {"0": ["x", "y"], "1": ["e"]}, "gamma": {"e": "y"}, "delta": {"e": ["x"]},'
     ' "tilde": {"1": [["x", "y"]]}}', "tilde.1"),
])
def test_parse_errors_point_at_the_problem(text, fragment):
    with pytest.raises(io.ParseError, match=fragment):
        io.loads(text)


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, S in N.items():
        p = tmp_path / (name.replace("(", "").replace(")", "").replace("'", "p") + ".json")
        io.save(S, p)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cli_validate(files, capsys):
    code, out = run(capsys, "validate", files["Grid"])
    assert code == 0 and json.loads(out.out)["valid"]


def test_cli_validate_reports_failure(tmp_path, capsys):
    from mutations import apply
    p = tmp_path / "bad.json"
    io.save(apply(N["Path2"], "drop_tilde", "a1", "a2"), p)
    code, out = run(capsys, "validate", str(p))
    doc = json.loads(out.out)
    assert code == 1 and not doc["axioms"]["pencil_linearity"]["pass"]


def test_cli_size_principal_cuts(files, capsys):
    code, out = run(capsys, "size", files["VComp"])
    assert json.loads(out.out) == {"size": [1, 1, 2], "principal": False}
    code, _ = run(capsys, "principal", files["VComp"])
    assert code == 1
    code, _ = run(capsys, "principal", files["G2(2)"])
    assert code == 0
    code, out = run(capsys, "cuts", files["Path3"])
    assert len(json.loads(out.out)["cuts"]) == 2


def test_cli_split_and_tensor(files, capsys, tmp_path):
    code, out = run(capsys, "split", files["VComp"], "--cut", "1:alpha")
    assert code == 0
    doc = json.loads(out.out)
    lo, up = tmp_path / "lo.json", tmp_path / "up.json"
    lo.write_text(json.dumps(doc["lower"]))
    up.write_text(json.dumps(doc["upper"]))
    code, out = run(capsys, "tensor", str(lo), str(up), "--level", "1")
    assert code == 0 and io.from_document(json.loads(out.out)) == N["VComp"]
    code, out = run(capsys, "split", files["VComp"], "--cut", "0:alpha")
    assert code == 1


def test_cli_tensor_mismatch(files, capsys):
    code, out = run(capsys, "tensor", files["G2(1)"], files["G2(2)"], "--level", "1")
    assert code == 1 and "InterfaceMismatch" in json.loads(out.out)["error"]


def test_cli_boundaries_and_homs(files, capsys):
    code, out = run(capsys, "cod", files["B0"], "-k", "1")
    assert json.loads(out.out).get("relaxed_top") is True
    code, out = run(capsys, "hom", files["I1"], files["Path2"], "--kind", "local")
    assert json.loads(out.out)["count"] == 2


def test_cli_cells_and_budget(files, capsys, monkeypatch):
    code, out = run(capsys, "cells", files["Path2"], "-n", "1")
    assert json.loads(out.out)["count"] == 6
    monkeypatch.setenv("OFS_BUDGET", "20")
    code, out = run(capsys, "cells", files["SFig"], "-n", "2")
    assert code == 1 and "BudgetExceeded" in json.loads(out.out)["error"]


def test_cli_enumerate_and_canon(files, capsys):
    code, out = run(capsys, "enumerate", "--dim", "2", "--max-faces", "5")
    assert json.loads(out.out)["total"] == 9
    code, out = run(capsys, "enumerate", "--dim", "2", "--max-faces", "7", "--principal")
    assert json.loads(out.out)["total"] == 3
    _, a = run(capsys, "canon", files["SFig"])
    _, b = run(capsys, "canon", files["SFig'"])
    assert json.loads(a.out) == json.loads(b.out)


def test_cli_gtcheck(files, capsys):
    code, out = run(capsys, "gtcheck", files["I1"], files["Path2"], files["G2(1)"])
    assert code == 0 and json.loads(out.out)["pass"]


def test_cli_usage_and_missing_file(capsys):
    with pytest.raises(SystemExit) as e:
        main(["validate"])
    assert e.value.code == 2
    code, out = run(capsys, "validate", "/nonexistent/file.json")
    assert code == 2 and "error" in out.err


@pytest.mark.skipif(shutil.which("ofs") is None, reason="console script not installed")
def test_console_script(files):
    r = subprocess.run(["ofs", "size", files["Grid"]], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["size"] == [1, 2, 4]
