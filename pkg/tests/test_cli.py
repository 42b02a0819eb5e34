import io
import json
import subprocess
import sys

import pytest

from aralg import cli
from aralg.algebra import UnsupportedCharacteristic
from aralg.catalog import test_algebras as build_test_algebras
from aralg.io import dump_algebra, structure_constants_dict

FILES = {"T1": "dual_numbers", "T2": "a2", "T3": "truncated_x3", "T4": "square"}


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("alg")
    out = {}
    for k, a in build_test_algebras().items():
        p = d / f"{FILES[k]}.json"
        p.write_text(dump_algebra(a))
        out[k] = str(p)
    bad = structure_constants_dict(build_test_algebras()["T3"])
    bad["structure_constants"][1][1] = ["1", "0", "0"]
    (d / "bad.json").write_text(json.dumps(bad))
    out["bad"] = str(d / "bad.json")
    return out


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    text = buf.getvalue()
    return code, text


def test_validate(files):
    code, text = run("validate", files["T4"])
    d = json.loads(text)
    assert code == 0 and d["dim"] == 9 and d["radical_dim"] == 5


def test_verify_ar_formula_dual_numbers(files):
    code, text = run("verify", "ArFormula", files["T1"])
    d = json.loads(text)
    assert code == 0 and d["passed"]
    assert [(r["first"], r["second"], r["ext_dim"], r["stable_dim"]) for r in d["rows"]] == \
        [("S1", "S1", 1, 1), ("S1", "P1", 0, 0)]


@pytest.mark.parametrize("suite", ["DtrRoutes", "SixTerm", "SerrePairing"])
def test_verify_suites(files, suite):
    code, text = run("verify", suite, files["T2"])
    assert code == 0 and json.loads(text)["passed"]


def test_corrupted_structure_constants_exit_2(files):
    assert run("validate", files["bad"])[0] == 2
    assert run("verify", "ArFormula", files["bad"])[0] == 2


def test_missing_file_and_bad_arguments(files, tmp_path):
    assert run("validate", str(tmp_path / "nope.json"))[0] == 2
    assert run("verify", "NoSuchSuite", files["T1"])[0] == 2


def test_unsupported_characteristic_exit_3(files, monkeypatch):
    def boom(*a, **k):
        raise UnsupportedCharacteristic("radical computation unavailable")
    monkeypatch.setattr(cli, "run_suite", boom)
    assert run("verify", "ArFormula", files["T1"])[0] == 3


def test_projective_target_rejected(files):
    assert run("ar", "sequence", files["T2"], "P1")[0] == 1
    assert run("ar", "sequence", files["T2"], "Q9")[0] == 1


def test_ar_sequence_report(files):
    code, text = run("ar", "sequence", files["T3"], "M2", "--emit", "matrices")
    d = json.loads(text)
    assert code == 0 and d["certified"]
    assert sorted(sum(v) for v in d["middle_summands"]) == [1, 3]
    assert len(d["iota"]) == 2 and len(d["pi"]) == 4


def test_ar_triangle_reports_gamma(files):
    code, text = run("ar", "triangle", files["T1"], "Lambda")
    d = json.loads(text)
    assert code == 0 and d["gamma_is_multiplication_by"].endswith("*x")


def test_ar_quiver_json_and_dot(files):
    code, text = run("ar", "quiver", files["T2"], "simples", "--steps", "3")
    assert code == 0 and len(json.loads(text)["nodes"]) == 3
    code, text = run("ar", "quiver", files["T2"], "simples", "--steps", "3", "--dot")
    assert code == 0 and text.startswith("digraph AR {") and text.count("->") == 3


def test_dtr(files):
    code, text = run("dtr", files["T4"], "S1")
    d = json.loads(text)
    assert code == 0 and d["isomorphic"] and d["transpose_route"] == [1, 1, 1, 0]


def test_module_file_target(files, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"dims": [1, 0], "arrows": {}}))
    code, text = run("dtr", files["T2"], f"@{p}")
    assert code == 0 and json.loads(text)["transpose_route"] == [0, 1]


def test_repetitive_compare(files):
    code, text = run("repetitive", "compare", files["T2"], "S1")
    d = json.loads(text)
    assert code == 0 and d["passed"] and d["margin_stable"]


def test_console_script(files):
    r = subprocess.run([sys.executable, "-m", "aralg.cli", "validate", files["T1"]], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["valid"]
    r = subprocess.run([sys.executable, "-m", "aralg.cli", "validate", files["bad"]], capture_output=True, text=True)
    assert r.returncode == 2 and "parse error" in r.stderr
