import json
import subprocess
import sys

import pytest

from thinhess.cli import main, to_json_text

R_FILE = {"field": "rational", "theta": ["0", "1", "2"], "theta_star": ["0", "1", "2"], "phi": ["1", "1"]}
R_PAIR = {
    "field": "rational",
    "A": [["2", "0", "0"], ["1", "1", "0"], ["0", "1", "0"]],
    "A_star": [["0", "1", "0"], ["0", "1", "1"], ["0", "0", "2"]],
}
# R conjugated by g = [[1,1,0],[0,1,0],[0,0,1]]
R_CONJ = {
    "field": "rational",
    "A": [["3", "-2", "0"], ["1", "0", "0"], ["0", "1", "0"]],
    "A_star": [["0", "2", "1"], ["0", "1", "1"], ["0", "0", "2"]],
}


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, write):
    code, out, _ = run(capsys, "validate", write("r.json", R_FILE))
    assert code == 0 and json.loads(out)["valid"] is True
    dup = dict(R_FILE, theta=["0", "0", "2"])
    code, out, _ = run(capsys, "validate", write("dup.json", dup))
    body = json.loads(out)
    assert code == 1 and body["condition"] == "i" and body["indices"] == [0, 1]
    assert "condition (i) violated at indices 0,1" in body["message"]
    code, _, err = run(capsys, "validate", write("bad.json", "{not json"))
    assert code == 2 and "malformed JSON" in err


@pytest.mark.parametrize(
    "data",
    [
        {"field": "gf:6", "theta": ["0"], "theta_star": ["0"], "phi": []},
        {"field": "rational", "theta": ["0", "1"], "theta_star": ["0"], "phi": ["1"]},
        {"field": "rational", "theta": [0.5], "theta_star": ["0"], "phi": []},
        {"field": "rational", "theta": ["x"], "theta_star": ["0"], "phi": []},
        {"theta": ["0"], "theta_star": ["0"], "phi": []},
        ["not", "an", "object"],
    ],
)
def test_bad_param_files_exit_2(capsys, write, data):
    assert run(capsys, "validate", write("p.json", data))[0] == 2


def test_missing_file_and_usage(capsys, tmp_path):
    assert run(capsys, "validate", str(tmp_path / "absent.json"))[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "matrices", "x.json")[0] == 2  # --basis is required


def test_invalid_array_rejected_by_other_commands(capsys, write):
    path = write("zero.json", dict(R_FILE, phi=["1", "0"]))
    for cmd in ("build", "nu", "dual", "verify"):
        assert run(capsys, cmd, path)[0] == 2


def test_build(capsys, write):
    code, out, _ = run(capsys, "build", write("r.json", R_FILE))
    body = json.loads(out)
    assert code == 0 and body["A"] == R_PAIR["A"] and body["A_star"] == R_PAIR["A_star"]
    assert len(body["E"]) == 3 and len(body["E_star"]) == 3


def test_matrices(capsys, write):
    path = write("r.json", R_FILE)
    code, out, _ = run(capsys, "matrices", path, "--basis", "phi-split")
    body = json.loads(out)
    assert code == 0 and body["B"] == R_PAIR["A"] and body["B_star"] == R_PAIR["A_star"]
    code, out, _ = run(capsys, "matrices", path, "--basis", "phi-standard")
    assert json.loads(out)["B"] == [["1", "-1", "0"], ["-1/2", "1", "-1/2"], ["0", "-1", "1"]]
    assert run(capsys, "matrices", path, "--basis", "nonsense")[0] == 2


def test_nu(capsys, write):
    code, out, _ = run(capsys, "nu", write("r.json", R_FILE))
    assert code == 0 and json.loads(out) == {"closed_form": "4", "trace_form": "4"}


def test_transition(capsys, write):
    path = write("r.json", R_FILE)
    code, out, _ = run(capsys, "transition", path, "--from", "phi-star-standard", "--to", "phi-standard")
    assert code == 0 and json.loads(out)["matrix"] == [["1", "2", "1"], ["1", "0", "-1"], ["1", "-2", "1"]]
    code, out, _ = run(capsys, "transition", path, "--from", "phi-standard", "--to", "phi-split")
    assert json.loads(out)["matrix"] == [["2", "-2", "1"], ["0", "-1", "1"], ["0", "0", "1"]]
    assert run(capsys, "transition", path, "--from", "phi-split", "--to", "inv-phi-split")[0] == 2


def test_dual(capsys, write):
    p = {"field": "rational", "theta": ["0", "1"], "theta_star": ["5", "6"], "phi": ["3"]}
    code, out, _ = run(capsys, "dual", write("p.json", p))
    assert code == 0 and json.loads(out) == {"field": "rational", "theta": ["5", "6"], "theta_star": ["0", "1"], "phi": ["3"]}


def test_recognize(capsys, write):
    code, out, _ = run(capsys, "recognize", write("pair.json", R_PAIR))
    body = json.loads(out)
    assert code == 0 and body["is_th_pair"] and R_FILE in body["systems"]
    diag = {"field": "rational", "A": [["0", "0"], ["0", "1"]], "A_star": [["2", "0"], ["0", "3"]]}
    code, out, _ = run(capsys, "recognize", write("diag.json", diag))
    body = json.loads(out)
    assert code == 1 and body["failure_reason"]["code"] == "no_ordering"
    one = {"field": "gf:5", "A": [["1"]], "A_star": [["4"]]}
    assert run(capsys, "recognize", write("one.json", one))[0] == 0
    ragged = {"field": "rational", "A": [["1", "0"]], "A_star": [["1"]]}
    assert run(capsys, "recognize", write("ragged.json", ragged))[0] == 2


def test_recognize_unsupported_field(capsys, write):
    big = {"field": "gf:1000003", "A": [["0", "-1"], ["1", "0"]], "A_star": [["1", "0"], ["0", "2"]]}
    code, _, err = run(capsys, "recognize", write("big.json", big))
    assert code == 2 and err


def test_isomorphic(capsys, write):
    r = write("r.json", R_FILE)
    code, out, _ = run(capsys, "isomorphic", r, write("conj.json", R_CONJ))
    assert code == 0 and json.loads(out)["isomorphic"] is True
    other = write("o.json", dict(R_FILE, phi=["1", "2"]))
    code, out, _ = run(capsys, "isomorphic", r, other)
    assert code == 1 and json.loads(out) == {"isomorphic": False}
    assert run(capsys, "isomorphic", r, r)[0] == 0
    small = write("s.json", {"field": "rational", "theta": ["0"], "theta_star": ["0"], "phi": []})
    assert run(capsys, "isomorphic", r, small)[0] == 2
    mod5 = write("m.json", dict(R_FILE, field="gf:5"))
    assert run(capsys, "isomorphic", r, mod5)[0] == 2


def test_random(capsys):
    first = run(capsys, "random", "--d", "3", "--seed", "42")
    second = run(capsys, "random", "--d", "3", "--seed", "42")
    assert first == second and first[0] == 0
    body = json.loads(first[1])
    assert len(body["theta"]) == 4 and len(body["phi"]) == 3
    assert run(capsys, "random", "--d", "4", "--field", "gf:3", "--seed", "7")[0] == 1
    code, out, _ = run(capsys, "random", "--d", "0", "--seed", "1")
    assert code == 0 and json.loads(out)["phi"] == []
    assert run(capsys, "random", "--d", "-1")[0] == 2
    assert run(capsys, "random", "--d", "2", "--field", "gf:4")[0] == 2


def test_random_output_is_valid(capsys, write):
    for field in ("rational", "gf:7"):
        code, out, _ = run(capsys, "random", "--d", "5", "--field", field, "--seed", "3")
        assert code == 0
        assert run(capsys, "validate", write("x.json", out))[0] == 0


def test_verify(capsys, write):
    for field in ("rational", "gf:5"):
        code, out, _ = run(capsys, "verify", write("r.json", dict(R_FILE, field=field)))
        body = json.loads(out)
        assert code == 0 and body["passed"]
        assert all(c["passed"] and c["description"] for c in body["checks"])


def test_output_flag_and_determinism(capsys, write, tmp_path):
    path = write("r.json", R_FILE)
    dest = tmp_path / "out.json"
    assert run(capsys, "verify", path, "-o", str(dest))[0] == 0
    once = dest.read_bytes()
    run(capsys, "verify", path, "-o", str(dest))
    assert dest.read_bytes() == once
    _, a, _ = run(capsys, "recognize", write("pair.json", R_PAIR))
    _, b, _ = run(capsys, "recognize", write("pair.json", R_PAIR))
    assert a == b


def test_json_layout():
    text = to_json_text({"m": [["1", "2"], ["3", "4"]], "v": []})
    assert '["1", "2"]' in text and text.endswith("\n")


def test_module_entry_point(tmp_path):
    path = tmp_path / "r.json"
    path.write_text(json.dumps(R_FILE))
    proc = subprocess.run([sys.executable, "-m", "thinhess", "nu", str(path)], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["closed_form"] == "4"
