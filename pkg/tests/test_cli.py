import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from gysin.cli import main

DATA = Path(__file__).parent / "data"
C2 = str(DATA / "c2_burnside.json")
Z8 = str(DATA / "z8_gw.json")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_gw_table_rows():
    code, out, _ = run("gw-table", "--p", "3", "--max-degree", "3")
    assert code == 0
    assert "e=2: j!(⟨1⟩) = ⟨1⟩+⟨g⟩ OK" in out
    assert "e=3: j!(⟨1⟩) = 3⟨1⟩ OK" in out


@pytest.mark.parametrize("argv", [
    ["gw-table", "--p", "2", "--max-degree", "2"],
    ["gw-table", "--p", "9", "--max-degree", "2"],
    ["gw-table", "--p", "3"],
    ["euler", "--p", "3", "--max-e", "0"],
    ["repro", "nonexistent"],
    ["verify", "--functor", "burnside", "--group", "Q8"],
    ["verify", "--functor", "rc", "--group", "Z/4"],
    [],
])
def test_usage_errors_exit_64(argv):
    code, _, err = run(*argv)
    assert code == 64
    assert err


def test_euler():
    code, out, _ = run("euler", "--p", "3", "--max-e", "6")
    assert code == 0
    assert "χ(F_q^6) = 6⟨1⟩+α OK" in out
    assert "E_3=3E_1 OK" in out
    assert "χ(E_2)·χ(E_3) = 6⟨1⟩+α OK" in out


def test_euler_json_lines():
    code, out, _ = run("euler", "--p", "5", "--max-e", "4", "--json")
    assert code == 0
    docs = [json.loads(line) for line in out.splitlines()]
    assert docs and all(d["status"] == "pass" for d in docs)


@pytest.mark.parametrize("name", ["real", "burnside-c2", "recon-ab", "z8"])
def test_repro_commands_pass(name):
    code, out, _ = run("repro", name)
    assert code == 0, out
    assert "all checks passed" in out


def test_repro_real_rows():
    _, out, _ = run("repro", "real")
    assert "Iπ∘Rπ = 1+σ OK" in out
    assert "Rπ∘Iπ = ⟨1⟩+⟨−1⟩ OK" in out


def test_repro_burnside_row():
    _, out, _ = run("repro", "burnside-c2")
    assert "Rπ∘Iπ = [ℤ/2] OK" in out


def test_repro_z8_other_prime():
    code, out, _ = run("repro", "z8", "--p", "5")
    assert code == 0 and "2⟨1⟩+α" in out


def test_ascii_output():
    code, out, _ = run("repro", "real", "--ascii")
    assert code == 0
    assert out.isascii()
    assert "Ipi o Rpi = 1+sigma OK" in out
    assert "<1>+<-1>" in out


def test_eval_one_plus_sigma():
    code, out, _ = run("eval", "--env", C2, "--expr", "I(pi)*R(pi)")
    assert code == 0 and out.strip() == "1 + σ"
    code, out, _ = run("eval", "--env", C2, "--expr", "I(pi)*R(pi)", "--ascii")
    assert out.strip() == "1 + sigma"


def test_eval_identity_and_burnside_class():
    _, out, _ = run("eval", "--env", C2, "--expr", "id(G)")
    assert out.strip() == "1"
    _, out, _ = run("eval", "--env", C2, "--expr", "R(pi)*I(pi)")
    assert out.strip() == "[ℤ/2]"


def test_eval_json():
    code, out, _ = run("eval", "--env", C2, "--expr", "I(pi)*R(pi)", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["value"]["functor"] == "burnside"
    assert doc["value"]["dom"] == doc["value"]["cod"] == "G"
    assert len(doc["value"]["elem"]["terms"]) == 2


def test_normalize_prints_terms():
    code, out, _ = run("normalize", "--env", C2, "--expr", "I(pi)*R(pi)")
    assert code == 0
    assert out.count(" * R[") == 2
    assert "re-evaluates to the same value: OK" in out
    code, out, _ = run("normalize", "--env", C2, "--expr", "R(pi)*I(pi)", "--json")
    assert code == 0 and len(json.loads(out)["terms"]) == 1


def test_eval_z8():
    _, out, _ = run("eval", "--env", Z8, "--expr", "R(pi1)*I(pi1)")
    assert out.strip() == "2⟨1⟩+α"
    _, out, _ = run("eval", "--env", Z8, "--expr", "D(alpha1)*R(pi1)")
    assert out.strip() == "0"
    _, out, _ = run("eval", "--env", Z8, "--expr", "I(pi2)*R(pi2)")
    assert out.strip() == "1 + σ^2"
    _, out, _ = run("eval", "--env", Z8, "--expr", "R(pi1)*D(alpha2)*I(pi1)")
    assert out.strip() == "α"


def test_functor_override():
    code, out, _ = run("eval", "--env", Z8, "--expr", "R(pi1)*I(pi1)", "--functor", "gw:5")
    assert code == 65  # the elements are written over F_3


@pytest.mark.parametrize("expr", ["R(", "R(nope)", "R(pi)*R(pi)", "R(pi) + id(G)", "3*"])
def test_bad_expressions_exit_65(expr):
    code, out, err = run("eval", "--env", C2, "--expr", expr)
    assert code == 65 and not out and err


def test_caret_position():
    _, _, err = run("eval", "--env", C2, "--expr", "R(")
    lines = err.splitlines()
    assert lines[-1].index("^") == lines[-2].index("R(") + 2


def test_bad_env_files(tmp_path):
    missing = str(tmp_path / "nope.json")
    assert run("eval", "--env", missing, "--expr", "id(G)")[0] == 65
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("eval", "--env", str(bad), "--expr", "id(G)")[0] == 65
    dangling = tmp_path / "dangling.json"
    dangling.write_text(json.dumps({"groups": {"C2": "Z/2"},
                                    "gsets": {"X": {"group": "C2", "regular": True}},
                                    "gmaps": {"f": {"src": "X", "dst": "Y", "table": [0, 0]}}}))
    assert run("eval", "--env", str(dangling), "--expr", "id(X)")[0] == 65
    noneq = tmp_path / "noneq.json"
    noneq.write_text(json.dumps({"groups": {"C2": "Z/2"},
                                 "gsets": {"X": {"group": "C2", "regular": True}},
                                 "gmaps": {"f": {"src": "X", "dst": "X", "table": [0, 0]}}}))
    assert run("eval", "--env", str(noneq), "--expr", "id(X)")[0] == 65


def test_maps_alias_and_act_form(tmp_path):
    env = tmp_path / "env.json"
    env.write_text(json.dumps({
        "groups": {"C2": {"order": 2, "mul": [[0, 1], [1, 0]]}},
        "gsets": {"X": {"group": "C2", "size": 2, "act": [[0, 1], [1, 0]]},
                  "pt": {"group": "C2", "terminal": True}},
        "maps": {"pi": {"src": "X", "dst": "pt", "table": [0, 0]}},
    }))
    code, out, _ = run("eval", "--env", str(env), "--expr", "I(pi)*R(pi)")
    assert code == 0 and out.strip() == "1 + σ"


@pytest.mark.parametrize("functor,group", [("burnside", "Z/4"), ("gw", "Z/8"), ("rc", "Z/2")])
def test_verify(functor, group):
    code, out, _ = run("verify", "--functor", functor, "--group", group, "--iters", "20")
    assert code == 0, out
    assert "all checks passed" in out


def test_verify_gw_chi_generation():
    code, out, _ = run("verify", "--functor", "gw", "--group", "Z/2", "--p", "5", "--iters", "10")
    assert code == 0
    assert "p=5: χ(E_1)=⟨1⟩, χ(E_2)=2⟨1⟩+α generate" in out


def test_verify_json_and_seed():
    argv = ["verify", "--functor", "burnside", "--group", "Z/2", "--iters", "10", "--json"]
    a = run(*argv, "--seed", "7")[1]
    b = run(*argv, "--seed", "7")[1]
    assert a == b
    docs = [json.loads(line) for line in a.splitlines()]
    axiom = next(d for d in docs if d["check"].startswith("axiom push-pull"))
    assert axiom["result"]["seed"] == 7 and axiom["result"]["status"] == "pass"


def test_console_module_entry():
    proc = subprocess.run([sys.executable, "-m", "gysin", "repro", "real", "--ascii"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "all checks passed" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "gysin", "gw-table", "--p", "2",
                           "--max-degree", "1"], capture_output=True, text=True)
    assert proc.returncode == 64
