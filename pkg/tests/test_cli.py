import io
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings

from idempotent_forge.cli import (
    ProblemFile,
    certificate_from_json,
    certificate_to_json,
    load_problem,
    parse_field,
    problem_to_json,
    run,
)
from idempotent_forge.fields import GF, QQ

from conftest import matrices

DIAG12 = {"field": "Q", "alpha": "1", "beta": "2", "matrix": [["1", "0"], ["0", "2"]]}
J3GAMMA = {"field": "Q", "alpha": "1", "beta": "2", "matrix": [["5", "1", "0"], ["0", "5", "1"], ["0", "0", "5"]]}


def call(*argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return _write


def test_decide_yes(write):
    code, out, _ = call("decide", "-i", write("diag12.json", DIAG12))
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_decide_no(write):
    code, out, _ = call("decide", "-i", write("j3.json", J3GAMMA))
    assert code == 1
    doc = json.loads(out)
    assert doc["verdict"] is False
    assert {c["id"] for c in doc["checks"]} == {"intertwine_alpha_beta", "intertwine_zero_t", "invariant_factors_in_Y"}


def test_construct_no_gives_diagnosis(write):
    code, out, _ = call("construct", "-i", write("j3.json", J3GAMMA))
    assert code == 1
    failed = [c["id"] for c in json.loads(out)["checks"] if not c["passed"]]
    assert failed == ["invariant_factors_in_Y"]


def test_construct_then_verify(write, tmp_path):
    prob = write("diag12.json", DIAG12)
    cert_path = str(tmp_path / "cert.json")
    code, out, _ = call("construct", "-i", prob, "-o", cert_path)
    assert code == 0
    assert json.loads(out) == json.load(open(cert_path))
    code, out, _ = call("verify", "-i", prob, "-c", cert_path)
    assert code == 0 and json.loads(out)["valid"] is True


def test_verify_tampered(write):
    prob = write("diag12.json", DIAG12)
    cert = write("cert.json", {"P": [["1", "0"], ["0", "0"]], "Q": [["1", "0"], ["0", "0"]]})
    code, out, _ = call("verify", "-i", prob, "-c", cert)
    assert code == 1
    doc = json.loads(out)
    assert doc["valid"] is False and doc["failed"] == ["sum_matches"]
    cert = write("cert2.json", {"P": [["2", "0"], ["0", "0"]], "Q": [["0", "0"], ["0", "1"]]})
    code, out, _ = call("verify", "-i", prob, "-c", cert)
    assert code == 1 and "P_idempotent" in json.loads(out)["failed"]


def test_canon(write):
    code, out, _ = call("canon", "-i", write("diag12.json", DIAG12))
    assert code == 0
    doc = json.loads(out)
    assert doc["minimal_polynomial"] == "1*X^2 + -3*X + 2"
    assert doc["invariant_factors"] == ["1*X^2 + -3*X + 2"]
    assert doc["weyr"] == {"1": [1], "2": [1], "0": [], "3": []}
    assert doc["parts"]["part_alpha"] == 1 and doc["parts"]["part_coprime"] == 0


@pytest.mark.parametrize(
    "problem",
    [
        {"field": "Q", "alpha": "0", "beta": "2", "matrix": [["1"]]},
        {"field": "Q", "alpha": "1", "beta": "2", "matrix": [["1", "2"]]},
        {"field": "Q", "alpha": "1", "beta": "2", "matrix": [["x"]]},
        {"field": "Q", "alpha": "1", "beta": "2", "matrix": [["1/0"]]},
        {"field": {"GF": 4}, "alpha": "1", "beta": "1", "matrix": [["1"]]},
        {"field": "R", "alpha": "1", "beta": "1", "matrix": [["1"]]},
        {"field": {"GF": 5}, "alpha": "5", "beta": "1", "matrix": [["1"]]},
        {"alpha": "1", "beta": "1", "matrix": [["1"]]},
        [1, 2],
    ],
)
def test_input_errors(write, problem):
    code, _, err = call("decide", "-i", write("bad.json", problem))
    assert code == 2 and err.startswith("error:")


def test_malformed_json_and_missing_file(write, tmp_path):
    assert call("decide", "-i", write("bad.json", "{not json"))[0] == 2
    assert call("decide", "-i", str(tmp_path / "absent.json"))[0] == 2
    assert call("frobnicate")[0] == 2
    assert call()[0] == 2


def test_fuzz_exhaustive():
    code, out, _ = call("fuzz", "--field", "GF:2", "--n", "2", "--mode", "exhaustive")
    doc = json.loads(out)
    assert code == 0 and doc["cases"] == 2 + 16 and doc["failures"] == []


def test_fuzz_random_seeded(monkeypatch):
    args = ("fuzz", "--field", "5", "--n", "3", "--alpha", "2", "--beta", "4", "--samples", "10")
    monkeypatch.setenv("IDEMPOTENT_FORGE_SEED", "1234")
    code, out, _ = call(*args)
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 1234 and doc["cases"] == 20
    assert call(*args)[1] == out
    code, out2, _ = call(*args, "--seed", "7")
    assert json.loads(out2)["seed"] == 7


def test_fuzz_rationals():
    code, out, _ = call("fuzz", "--field", "Q", "--n", "4", "--alpha", "1/2", "--beta", "-3", "--samples", "5")
    assert code == 0 and json.loads(out)["cases"] == 5


def test_fuzz_budget():
    assert call("fuzz", "--field", "GF:7", "--n", "4", "--mode", "exhaustive")[0] == 2
    assert call("fuzz", "--field", "Q", "--mode", "exhaustive")[0] == 2


def test_parse_field():
    assert parse_field("Q") == QQ
    for s in ("GF:7", "GF(7)", "7", {"GF": 7}):
        assert parse_field(s) == GF(7)


@pytest.mark.parametrize("field", [QQ, GF(5)], ids=str)
def test_problem_and_certificate_roundtrip(field):
    @settings(deadline=None, max_examples=40)
    @given(matrices(field, 1, 4))
    def check(A):
        prob = ProblemFile(field, field.coerce(2), field.coerce(3), A)
        again = load_problem(json.loads(json.dumps(problem_to_json(prob))))
        assert again == prob
        from idempotent_forge.composite import Certificate

        cert = Certificate(A, A, prob.alpha, prob.beta)
        back = certificate_from_json(json.loads(json.dumps(certificate_to_json(cert))), prob)
        assert back == cert

    check()


def test_module_entry_point(write):
    proc = subprocess.run(
        [sys.executable, "-m", "idempotent_forge", "construct", "-i", "-"],
        input=json.dumps(DIAG12),
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert set(json.loads(proc.stdout)) == {"P", "Q"}
