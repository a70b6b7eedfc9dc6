import json
import subprocess
import sys

import pytest

from bitrade_lab.cli import main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_fgg(capsys):
    code, out, _ = run(capsys, "analyze", "--fixture", "fgg")
    assert code == 3
    data = json.loads(out)
    assert data["A_W"] == "Z_3 + Z_6"


def test_analyze_intercalate(capsys):
    code, out, _ = run(capsys, "analyze", "--fixture", "intercalate")
    assert code == 0
    assert all(json.loads(out)["verdicts"].values())


def test_analyze_missing(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", str(tmp_path / "missing.json"))
    assert code == 1 and "cannot read" in err


def test_analyze_malformed(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"vertices": ["r", "c", "s"], "white": [["r", "c", "s"]], "black": []}))
    code, _, err = run(capsys, "analyze", str(p))
    assert code == 1


def test_analyze_two_components(capsys, tmp_path):
    p = tmp_path / "two.json"
    p.write_text(
        json.dumps(
            {
                "vertices": ["r", "c", "s", "x", "y", "z"],
                "white": [["r", "c", "s"], ["x", "y", "z"]],
                "black": [["r", "c", "s"], ["x", "y", "z"]],
            }
        )
    )
    code, out, _ = run(capsys, "analyze", str(p))
    assert code == 0
    assert len(json.loads(out)["components"]) == 2


def test_generate_then_tree_number(capsys, monkeypatch):
    code, out, _ = run(capsys, "generate", "--family", "exp", "--k", "6", "--w", "2")
    assert code == 0
    code, out2, _ = run(capsys, "tree-number", "-", stdin=out, monkeypatch=monkeypatch)
    assert code == 0 and json.loads(out2) == {"tree_number": "192"}


def test_generate_out_file(capsys, tmp_path):
    p = tmp_path / "g.json"
    assert run(capsys, "generate", "--k", "3", "--out", str(p))[0] == 0
    assert run(capsys, "tree-number", str(p))[1] == '{\n  "tree_number": "12"\n}\n'


def test_generate_bad_params(capsys):
    assert run(capsys, "generate", "--k", "1")[0] == 1


def test_tree_number_two_face(capsys):
    code, out, _ = run(capsys, "tree-number", "--fixture", "two-face")
    assert json.loads(out) == {"tree_number": "1"}


def test_tree_number_not_colourable(capsys):
    assert run(capsys, "tree-number", "--fixture", "fgg")[0] == 1


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "arborescences", "--fixture", "intercalate", "--root", "z1")
    assert code == 0 and json.loads(out)["arborescences"] == "2"
    assert run(capsys, "oracle", "arborescences", "--fixture", "intercalate", "--root", "z9")[0] == 1


def test_bitrade_verb(capsys, tmp_path):
    p = tmp_path / "ic.json"
    p.write_text(
        json.dumps(
            {
                "white": [["r1", "c1", "s1"], ["r1", "c2", "s2"], ["r2", "c1", "s2"], ["r2", "c2", "s1"]],
                "black": [["r1", "c1", "s2"], ["r1", "c2", "s1"], ["r2", "c1", "s1"], ["r2", "c2", "s2"]],
            }
        )
    )
    code, out, _ = run(capsys, "bitrade", str(p))
    data = json.loads(out)
    assert code == 0 and data["spherical"] and data["decomposition"] == "indecomposable"
    assert data["embeddings"]["white"]["target"] == "Z_2"
    q = tmp_path / "bad.json"
    q.write_text(json.dumps({"white": [["r", "c", "s"]], "black": [["r", "c", "s"]]}))
    assert run(capsys, "bitrade", str(q))[0] == 1


def test_verify_sphere(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sphere", "--count", "20", "--seed", "7", "--order", "6")
    data = json.loads(out)
    assert code == 0 and data["passed"] == 20


def test_verify_sphere_text(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sphere", "--count", "4", "--format", "text")
    assert code == 0 and out.rstrip().endswith("4/4 pass")


def test_verify_is_deterministic_and_jobs_independent(capsys):
    a = run(capsys, "verify", "--suite", "sphere", "--count", "8", "--seed", "3")[1]
    b = run(capsys, "verify", "--suite", "sphere", "--count", "8", "--seed", "3", "--jobs", "2")[1]
    assert a == b


def test_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("BITRADE_LAB_SEED", "5")
    data = json.loads(run(capsys, "verify", "--suite", "sphere", "--count", "2")[1])
    assert data["seed"] == 5
    monkeypatch.setenv("BITRADE_LAB_SEED", "x")
    assert run(capsys, "verify", "--suite", "sphere", "--count", "2")[0] == 1


def test_verify_family(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "family", "--k-max", "5", "--w-max", "3")
    data = json.loads(out)
    assert code == 0 and len(data["rows"]) == 4 * 3


def test_verify_fixtures(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "fixtures", "--format", "text")
    assert code == 0 and "torus-cw" in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "bitrade_lab", "tree-number", "--fixture", "intercalate"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0 and json.loads(res.stdout) == {"tree_number": "2"}


def test_exactly_one_verb():
    with pytest.raises(SystemExit):
        main([])
