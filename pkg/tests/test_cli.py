import json

import pytest

from ore_forge.cli import main
from ore_forge.examples import qmat2
from ore_forge.ore import LaurentRing
from ore_forge.presentation import loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_theta_text(capsys):
    code, out, _ = run(capsys, "theta", "qmat2", "x11")
    assert code == 0
    assert out.splitlines()[0] == "x11 - q*x12*x21*x22^-1"


def test_theta_json_round_trip(capsys):
    code, out, _ = run(capsys, "--json", "theta", "qmat2", "x11")
    payload = json.loads(out)
    M = qmat2()
    L = LaurentRing(M.ring, 4)
    assert code == 0 and payload["s_min"] == 1
    assert L.parse(payload["value"]) == L.parse("x11*x22*x22^-1 - q*x12*x21*x22^-1")


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "quantum-weyl", "x2*x1")
    assert code == 0 and out.strip() == "q*x1*x2 + 1"


def test_normal_commands(capsys):
    code, out, _ = run(capsys, "--json", "normal", "quantum-weyl", "x1")
    payload = json.loads(out)
    assert code == 0 and payload["element"] == "x1*x2 + 1/(q - 1)"
    code, out, _ = run(capsys, "normal", "--verify", "quantum-weyl", "x1*x2 + 1/(q-1)")
    assert code == 0
    code, out, _ = run(capsys, "normal", "--verify", "quantum-weyl", "x1")
    assert code == 1 and "not normal" in out


def test_innerd_routes(capsys):
    code, out, _ = run(capsys, "innerd", "qmat2", "x11", "--from-monic", "x11", "(-q)*x12*x21", "1")
    assert code == 0 and "routes agree: yes" in out


def test_delete_and_check(capsys):
    code, out, _ = run(capsys, "delete", "qmat2", "--all")
    assert code == 0 and "result: quantum affine space" in out
    code, out, _ = run(capsys, "--json", "delete", "qmat2")
    final = json.loads(out)["final"]
    assert loads(json.dumps(final)).delta == {}
    for name in ("quantum-plane", "quantum-weyl", "qmat2", "qaffine-3"):
        assert run(capsys, "check", name)[0] == 0


def test_spectra_and_grade(capsys):
    assert run(capsys, "spectra", "qmat2")[0] == 0
    assert run(capsys, "spectra", "qaffine-4", "--tauvel")[0] == 0
    code, out, _ = run(capsys, "--json", "grade", "qmat2")
    assert code == 0 and json.loads(out)["gk_dimension"] == 4
    assert run(capsys, "grade", "qmat2", "--max-total", "4")[0] == 3


def test_poset_file(capsys, data_dir):
    code, out, _ = run(capsys, "spectra", "--poset", f"{data_dir}/non_catenary.txt")
    assert code == 1 and "catenary: no" in out


@pytest.mark.parametrize("name", ["root_of_unity.json", "non_nilpotent.json", "weight_inconsistent.json"])
def test_invalid_files_fail(capsys, data_dir, name):
    assert run(capsys, "check", f"{data_dir}/{name}")[0] == 1


def test_seed_determinism(capsys):
    a = run(capsys, "--json", "--seed", "5", "check", "qmat2")[1]
    b = run(capsys, "--json", "--seed", "5", "check", "qmat2")[1]
    assert a == b


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "nf", "qmat2", "x11 +")[0] == 2
    assert run(capsys, "nf", "nosuch", "x1")[0] == 2
    assert run(capsys, "theta", "qmat2", "x22")[0] == 2
    assert run(capsys, "examples")[0] == 0


def test_bound_exhaustion(capsys, data_dir, monkeypatch):
    monkeypatch.setenv("ORE_FORGE_BOUND", "1")
    assert run(capsys, "theta", "quantum-weyl", "x1^3")[0] == 3
