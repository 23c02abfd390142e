import io
import json
import subprocess
import sys

import pytest

from omegasym.cli import run
from omegasym.form import standard_matrix
from omegasym.poly import MultiPoly, PolyVectorField

from conftest import GOLDEN_L, GOLDEN_OMEGA, six_dim_field_components, xs


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue()
    return code, (json.loads(text) if text else None), text, err.getvalue()


def rows(m):
    return {"rows": [[str(v) for v in r] for r in m]}


@pytest.fixture
def files(tmp_path):
    x, y = xs(2)

    def put(name, doc):
        p = tmp_path / name
        p.write_text(json.dumps(doc) if doc != 0 else "{not json")
        return str(p)

    return {
        "j1": put("j1.json", standard_matrix(1).to_json()),
        "j3": put("j3.json", standard_matrix(3).to_json()),
        "omega": put("omega.json", rows(GOLDEN_OMEGA)),
        "l": put("l.json", rows(GOLDEN_L)),
        "lt": put("lt.json", rows(list(zip(*GOLDEN_L)))),
        "odd": put("odd.json", rows([[0, 1, 0], [-1, 0, 0], [0, 0, 0]])),
        "sym": put("sym.json", rows([[0, 1], [1, 0]])),
        "nil": put("nil.json", rows([[0, 1], [0, 0]])),
        "rot_field": put("rot.json", PolyVectorField([y, -x]).to_json()),
        "const_field": put("const.json", PolyVectorField([y + 1, -x]).to_json()),
        "six_field": put("six.json", PolyVectorField(six_dim_field_components()).to_json()),
        "harmonic": put("harm.json", ((x ** 2 + y ** 2) / 2).to_json()),
        "x4": put("x4.json", (x ** 4).to_json()),
        "x2": put("x2.json", (x ** 2).to_json()),
        "big": put("big.json", {"nvars": 2, "terms": [{"c": "1", "e": [70, 0]}]}),
        "badjson": put("bad.json", 0),
        "ident": put("ident.json", rows([[1, 0], [0, 1]])),
        "rot_mat": put("rot_mat.json", rows([["3/5", "-4/5"], ["4/5", "3/5"]])),
    }


def test_check_matrix_golden_pair(files):
    code, doc, _, _ = call("check-matrix", "--form", files["omega"], "--matrix", files["l"])
    assert code == 0 and doc["hamiltonian"] is True
    code, doc, _, _ = call("check-matrix", "--form", files["omega"], "--matrix", files["lt"])
    assert code == 0 and doc["hamiltonian"] is False and doc["trace"] == "0"


def test_check_field_six_dim(files):
    code, doc, _, _ = call("check-field", "--form", files["j3"], "--field", files["six_field"])
    assert code == 0
    assert doc["hamiltonian"] is False
    assert doc["witness"]["trace_at_zero"] == "3"


def test_check_field_constant_policy(files):
    code, _, _, err = call("check-field", "--form", files["j1"], "--field", files["const_field"])
    assert code == 3 and "ConstantPartPresent" in err
    code, doc, _, _ = call("check-field", "--form", files["j1"], "--field", files["const_field"], "--allow-constant")
    assert code == 0 and doc == {"hamiltonian": True}


def test_recover(files):
    code, doc, _, _ = call("recover", "--form", files["j1"], "--field", files["rot_field"])
    assert code == 0 and doc["hamiltonian"] is True
    x, y = xs(2)
    assert MultiPoly.from_json(doc["H"]) == (x ** 2 + y ** 2) / 2
    code, doc, _, _ = call("recover", "--form", files["j3"], "--field", files["six_field"])
    assert code == 0 and doc["hamiltonian"] is False


def test_validate_form(files):
    code, doc, _, _ = call("validate-form", "--form", files["omega"])
    assert code == 0 and doc["valid"] and doc["det"] == "1" and doc["minus_identity_square"] is False
    code, doc, _, _ = call("validate-form", "--form", files["sym"])
    assert code == 0 and doc["valid"] is False and doc["reason"] == "NotSkewSymmetric"


def test_darboux(files):
    code, doc, _, _ = call("darboux", "--form", files["omega"])
    assert code == 0
    assert doc["p"] == rows([[1, -1, 0, 0], [0, 0, 1, 2], [0, 1, 0, 0], [0, 0, 0, -1]])
    assert all(v == "0" for r in doc["residual"]["rows"] for v in r)
    code, doc, _, err = call("darboux", "--form", files["odd"])
    assert code == 3 and doc is None and "OddDimension" in err


def test_classify(files):
    code, doc, _, _ = call("classify", "--form", files["j1"], "--matrix", files["rot_mat"])
    assert code == 0 and doc["kind"] == "symplectic" and doc["lambda"] == "1" and doc["sigma"] == 1
    code, doc, _, _ = call("classify", "--form", files["omega"], "--seed", "7", "--lambda", "-1")
    assert code == 0 and doc["kind"] == "antisymplectic" and doc["sigma"] == -1 and "matrix" in doc
    code, doc, _, _ = call("classify", "--form", files["omega"], "--seed", "7", "--lambda", "1/4")
    assert code == 0 and doc["kind"] == "lambda_symplectic" and doc["lambda"] == "1/4" and doc["sigma"] is None
    code, doc, _, _ = call("classify", "--form", files["j1"], "--matrix", files["nil"])
    assert code == 0 and doc["kind"] == "outside" and doc["lambda"] is None


def test_construct_and_adapted_form(files):
    code, doc, _, _ = call("construct", "--form", files["j1"], "--matrix", files["nil"], "--remainder", files["x4"])
    x, y = xs(2)
    assert code == 0 and PolyVectorField.from_json(doc) == PolyVectorField([y, -4 * x ** 3])
    code, _, _, err = call("construct", "--form", files["j1"], "--matrix", files["nil"], "--remainder", files["x2"])
    assert code == 3 and "JetConditionViolated" in err
    code, doc, _, _ = call("adapted-form", "--matrix", files["j1"])
    assert code == 0 and doc == standard_matrix(1).to_json()
    code, _, _, _ = call("adapted-form", "--matrix", files["sym"])
    assert code == 3


def test_simulate(files, tmp_path):
    csv_path = tmp_path / "out.csv"
    code, doc, _, _ = call("simulate", "--form", files["j1"], "--hamiltonian", files["harmonic"],
                           "--x0", "1,0", "--dt", "0.01", "--t", "1", "--csv", str(csv_path))
    assert code == 0 and doc["pass"] is True and doc["steps"] == 100
    assert isinstance(doc["energy_drift"], float)
    assert csv_path.read_text().startswith("t,x1,x2,H")


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["check-matrix", "--form", "FORM"],
    ["check-field", "--field", "FIELD"],
    ["recover", "--form", "FORM"],
    ["construct", "--form", "FORM"],
    ["adapted-form"],
    ["darboux"],
    ["validate-form"],
    ["classify", "--form", "FORM"],
    ["classify", "--form", "FORM", "--seed", "-1"],
    ["simulate", "--form", "FORM", "--hamiltonian", "HARM"],
    ["simulate", "--form", "FORM", "--hamiltonian", "HARM", "--x0", "1,zz"],
    ["simulate", "--form", "FORM", "--hamiltonian", "HARM", "--x0", "1,0", "--dt", "-1"],
    ["darboux", "--form", "/nonexistent/form.json"],
])
def test_usage_errors_exit_2(files, argv):
    subst = {"FORM": files["j1"], "FIELD": files["rot_field"], "HARM": files["harmonic"]}
    code, doc, _, err = call(*[subst.get(a, a) for a in argv])
    assert code == 2 and doc is None and err


@pytest.mark.parametrize("argv", [
    ["validate-form", "--form", "BAD"],
    ["darboux", "--form", "ODD"],
    ["classify", "--form", "OMEGA", "--matrix", "J1"],
    ["classify", "--form", "OMEGA", "--seed", "1", "--lambda", "2"],
    ["check-matrix", "--form", "OMEGA", "--matrix", "J1"],
    ["check-field", "--form", "J3", "--field", "ROT"],
    ["recover", "--form", "J1", "--field", "BAD"],
    ["construct", "--form", "J1", "--matrix", "IDENT", "--remainder", "X4"],
    ["adapted-form", "--matrix", "ODD"],
    ["simulate", "--form", "J3", "--hamiltonian", "HARM", "--x0", "1,0"],
])
def test_invalid_input_exit_3(files, argv):
    subst = {"BAD": files["badjson"], "ODD": files["odd"], "OMEGA": files["omega"], "J1": files["j1"],
             "J3": files["j3"], "ROT": files["rot_field"], "IDENT": files["ident"], "X4": files["x4"],
             "HARM": files["harmonic"]}
    code, doc, _, err = call(*[subst.get(a, a) for a in argv])
    assert code == 3 and doc is None and err


def test_resource_limit_exit_4(files):
    code, doc, _, err = call("simulate", "--form", files["j1"], "--hamiltonian", files["big"], "--x0", "1,0")
    assert code == 4 and doc is None and "resource" in err


def test_degree_cap_env_override(files, monkeypatch):
    monkeypatch.setenv("OMEGA_MAX_DEGREE", "3")
    code, _, _, _ = call("construct", "--form", files["j1"], "--matrix", files["nil"], "--remainder", files["x4"])
    assert code == 4


def test_blow_up_is_a_computed_failure(files, tmp_path):
    x, y = xs(2)
    h = tmp_path / "escape.json"
    h.write_text(json.dumps((-x * y ** 2).to_json()))
    code, doc, _, _ = call("simulate", "--form", files["j1"], "--hamiltonian", str(h),
                           "--x0", "10,10", "--dt", "0.5", "--t", "50")
    assert code == 0 and doc["pass"] is False and doc["error"] == "NonFiniteState"


def test_output_is_byte_identical(files):
    cases = [
        ("darboux", "--form", files["omega"]),
        ("classify", "--form", files["omega"], "--seed", "99", "--lambda", "-1"),
        ("check-field", "--form", files["j3"], "--field", files["six_field"]),
        ("recover", "--form", files["j1"], "--field", files["rot_field"]),
    ]
    for argv in cases:
        assert call(*argv)[2] == call(*argv)[2]


def test_console_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "omegasym", "check-matrix", "--form", files["omega"],
                           "--matrix", files["l"]], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["hamiltonian"] is True
