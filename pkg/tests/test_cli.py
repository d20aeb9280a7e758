import io
import json
import subprocess
import sys

import jsonschema
import pytest

from picard_fuchs.cli import run

ODE_SCHEMA = {
    "type": "object",
    "required": ["command", "inputs", "result", "timings"],
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "timings": {"type": "object", "additionalProperties": {"type": "integer"}},
        "result": {
            "type": "object",
            "required": ["order", "coefficients", "normalized"],
            "properties": {
                "order": {"type": "integer", "minimum": 0},
                "normalized": {"type": "boolean"},
                "coefficients": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["num", "den"],
                        "properties": {"num": {"type": "string"}, "den": {"type": "string"}},
                    },
                },
            },
        },
    },
}

CURVE = ["pf", "curve", "--g2", "1/192", "--g3", "(864*t-1)/13824", "--var", "t"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_curve_json_schema_and_values():
    code, out, _ = call(*CURVE, "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, ODE_SCHEMA)
    assert doc["command"] == "pf curve"
    assert doc["result"]["order"] == 2
    assert [c["num"] for c in doc["result"]["coefficients"]] == ["60", "864*t - 1", "432*t^2 - t"]
    assert all(c["den"] == "1" for c in doc["result"]["coefficients"])


def test_output_is_deterministic():
    docs = []
    for _ in range(2):
        doc = json.loads(call(*CURVE, "--format", "json")[1])
        doc.pop("timings")
        docs.append(doc)
    assert docs[0] == docs[1]
    assert call(*CURVE)[1] == call(*CURVE)[1]
    assert call(*CURVE, "--format", "latex")[1] == call(*CURVE, "--format", "latex")[1]


def test_no_floats_in_json():
    code, out, _ = call("ode", "box", "--j", "t^2 + 1", "--format", "json")
    assert code == 0

    def walk(v):
        assert not isinstance(v, float)
        if isinstance(v, dict):
            for x in v.values():
                walk(x)
        elif isinstance(v, list):
            for x in v:
                walk(x)

    walk(json.loads(out))


def test_latex_layout():
    code, out, _ = call(*CURVE, "--format", "latex")
    assert code == 0
    assert r"f''(t)" in out and "432 t^{2} - t" in out and out.strip().endswith(r"= 0 \]")


def test_check_master_pass_and_fail():
    code, out, _ = call("modular", "check-master", "--n", "2")
    assert code == 0 and out.splitlines()[0] == "PASS"
    code, out, _ = call("modular", "check-master", "--j1", "t", "--j2", "t + 1")
    assert code == 1 and out.splitlines()[0] == "FAIL"


@pytest.mark.parametrize("argv", [
    ["pf", "curve", "--g2", "x +", "--g3", "1"],
    ["pf", "curve", "--g2", "t^-1", "--g3", "1"],
    ["pf", "curve", "--g2", "t/0", "--g3", "1"],
    ["modular", "psi", "--n", "5"],
    ["modular", "qvalue", "--label", "nope"],
    ["nonsense"],
    ["pf", "k3", "--d", "t"],
])
def test_usage_errors_exit_two(argv):
    assert call(*argv)[0] == 2


def test_parse_error_reports_position():
    code, _, err = call("pf", "curve", "--g2", "1 + q", "--g3", "1")
    assert code == 2 and "1:5" in err and "undeclared" in err


def test_order_bound_exits_three():
    code, _, err = call("pf", "k3", "--b-squared", "t", "--d", "t", "--max-order", "2")
    assert code == 3 and "computation failed" in err


def test_geometry_commands():
    assert call("geom", "isogeny", "--n", "2")[0] == 0
    assert call("geom", "beauville", "--spot-checks", "2")[0] == 0
    assert call("geom", "toric-curve")[0] == 1
    assert call("geom", "toric-k3")[0] == 1
    assert call("geom", "gkz")[0] == 1


def test_groebner_commands():
    code, out, _ = call("gb", "compute", "--gens", "x^2 - y; y^2", "--vars", "x,y", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["result"]["cofactors_ok"] is True
    code, out, _ = call("gb", "reduce", "--gens", "x^2 - y; y^2", "--vars", "x,y", "--poly", "x^3")
    assert code == 0 and "remainder: x*y" in out
    assert call("gb", "member", "--gens", "x^2 - y; y^2", "--vars", "x,y", "--poly", "x^4")[0] == 0
    assert call("gb", "member", "--gens", "x^2 - y; y^2", "--vars", "x,y", "--poly", "x")[0] == 1


def test_ode_commands():
    code, out, _ = call("ode", "pnf", "--coeff", "0", "--coeff", "2/t", "--coeff", "1")
    assert code == 0 and "p2: 0" in out
    code, out, _ = call("ode", "schwarzian", "--j", "t^2")
    assert code == 0 and "schwarzian: -3/(2*t^2)" in out
    code, out, _ = call("ode", "tensor", "--p2", "t", "--q2", "0", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["order"] == 4
    assert call("ode", "fano", "--p2", "t", "--q2", "t")[0] == 0


def test_modular_commands():
    code, out, _ = call("modular", "psi", "--n", "2", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["weighted_degree"] == 18
    assert call("modular", "param", "--n", "6")[0] == 0
    assert call("modular", "qvalue", "--label", "Gamma0(3)+3")[0] == 0
    assert call("modular", "level2-example")[0] == 0


def test_verify_subset():
    code, out, _ = call("verify", "suite", "--only", "3,9")
    assert code == 0 and out.splitlines()[0] == "2/2 criteria pass"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "picard_fuchs", "modular", "check-master", "--n", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("PASS")
