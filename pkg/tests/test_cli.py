import io
import json
import subprocess
import sys

import pytest

from kappalab.cli import invariant_form, main
from kappalab.integrals import jacobian_measure
from kappalab.realizations import get_realization


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, json.loads(text)


def test_star_text_output():
    code, text = run("star", "x0", "x1", "--realization", "left", "--order", "2")
    assert code == 0
    assert text == "f * g = x0*x1 - i*a1*x0\n"


def test_star_plane_waves_give_the_kernel():
    code, text = run("star", "exp(i*k.x)", "exp(i*q.x)", "--realization", "left", "--dim", "2", "--order", "1")
    assert code == 0
    assert text.splitlines() == [
        "D0(k,q) = k0 + q0 - a0*k0*q0 + a1*k0*q1",
        "D1(k,q) = k1 + q1 - a0*k1*q0 + a1*k1*q1",
    ]


def test_json_schema():
    code, doc = run_json("kernel", "--realization", "right", "--dim", "2", "--order", "1")
    assert code == 0
    assert set(doc) == {"command", "config", "results"}
    assert doc["command"] == "kernel"
    assert doc["config"] == {"dimension": 2, "order": 1, "realization": "right"}
    names = [r["name"] for r in doc["results"]]
    assert names == ["K0", "K1", "Kinv0", "Kinv1", "D0", "D1", "S0", "S1", "P0", "P1"]
    for r in doc["results"]:
        assert set(r) == {"name", "residual_zero", "value"}
        assert isinstance(r["residual_zero"], bool) and isinstance(r["value"], str)


def test_output_is_deterministic():
    argv = ("dual", "--realization", "symmetric", "--dim", "2", "--order", "2", "--format", "json")
    assert run(*argv) == run(*argv)


def test_coproduct_and_antipode():
    code, text = run("coproduct", "Z", "--realization", "right", "--dim", "2", "--order", "1")
    assert code == 0 and text.startswith("Delta(Z) = ")
    code, text = run("antipode", "Z", "--realization", "right", "--dim", "2", "--order", "1")
    assert text == "S(Z) = 1 + i*a0*d0 - i*a1*d1\n"
    code, text = run("antipode", "d0 + a0*d1^2", "--realization", "left", "--dim", "2", "--order", "1")
    assert code == 0 and text.startswith("S(d0 + a0*d1^2) = ")


def test_jacobian_invariant_form():
    code, text = run("jacobian", "--realization", "natural", "--dim", "2", "--order", "4")
    assert code == 0
    assert "J invariant form = 1 - 1/2*a.a*k.k + 3/8*(a.a)^2*(k.k)^2" in text


def test_invariant_form_for_symmetric():
    J = jacobian_measure(get_realization("symmetric", 2, 2)).poly
    assert invariant_form(J, 2, 2) == "1 + 1/2*a.k + 1/6*(a.k)^2"


def test_realizations_list():
    code, text = run("realizations", "list")
    assert code == 0
    assert text.splitlines()[0] == "left = typeI"


def test_verify_passes_and_counts():
    code, text = run("verify", "kappa", "--realization", "left", "--dim", "2", "--order", "2")
    assert code == 0
    assert text.splitlines()[-1] == "8 checks, 0 failed"


def test_verify_marks_probes(tmp_path):
    code, text = run("verify", "translation", "--realization", "left", "--dim", "2", "--order", "1")
    assert code == 0
    assert "(expected nonzero)" in text
    code, doc = run_json("verify", "translation", "--realization", "left", "--dim", "2", "--order", "1")
    probes = [r for r in doc["results"] if r.get("expected_zero") is False]
    assert probes and all(not r["residual_zero"] for r in probes)


def test_verify_fails_with_exit_one(tmp_path):
    path = tmp_path / "commutative.yaml"
    path.write_text(
        "dimension: 2\norder: 1\nrealization:\n  kind: explicit\n  phi: [['-1', '0'], ['0', '1']]\n"
    )
    code, text = run("verify", "kappa", "--config", str(path))
    assert code == 1
    assert "FAIL explicit: kappa [x0, x1]" in text


def test_config_and_flags(tmp_path):
    path = tmp_path / "job.yaml"
    path.write_text("dimension: 2\norder: 1\nrealization: right\n")
    code, doc = run_json("kernel", "--config", str(path), "--realization", "left")
    assert code == 0
    assert doc["config"] == {"dimension": 2, "order": 1, "realization": "left"}


@pytest.mark.parametrize(
    "argv",
    [
        ("star", "x0 +", "x1"),
        ("star", "x9", "x1", "--dim", "2"),
        ("star", "exp(i*k.x)", "x1"),
        ("kernel", "--dim", "9"),
        ("kernel", "--realization", "nope"),
        ("kernel", "--config", "/nonexistent/job.yaml"),
        ("coproduct", "x0", "--dim", "2", "--order", "1"),
        ("antipode", "dirac7", "--dim", "2", "--order", "1"),
    ],
)
def test_usage_errors_exit_two(argv):
    code, doc = run_json(*argv)
    assert code == 2
    assert doc["results"] == [] and "message" in doc["error"]


def test_parse_error_position_in_json():
    code, doc = run_json("star", "x0 + $", "x1")
    assert code == 2
    assert doc["error"]["position"] == 5


def test_argparse_errors_exit_two(capsys):
    assert main(["verify", "nonsense"], io.StringIO()) == 2
    assert main([], io.StringIO()) == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kappalab", "star", "x0", "x0", "--realization", "right", "--order", "2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == "f * g = x0^2 + i*a0*x0\n"
