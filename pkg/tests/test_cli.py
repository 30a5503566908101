import json
import subprocess
import sys

import pytest

from koszulspec.cli import main

HYPER = {"field": "QQ", "vars": ["x", "y", "z"], "ideal": ["x*y + y*z + z*x"], "points": [["0", "0", "0"]]}
DIAG = {"vars": ["x", "y"], "tuple": {"dim": 2, "matrices": [[["0", "0"], ["0", "1"]], [["0", "0"], ["0", "2"]]]}}
HYPERBOLA = {"vars": ["x", "y"], "ideal": ["x*y - 1"]}
CUSP = {"vars": ["x", "y"], "ideal": ["y^2 - x^3"]}
PLANE = {"vars": ["x", "y"], "ideal": []}
ROTATION = {"vars": ["x"], "tuple": {"matrices": [[["0", "-1"], ["1", "0"]]]}}


@pytest.fixture
def problem(tmp_path):
    def write(data, name="p.json"):
        p = tmp_path / name
        p.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_homology_ideal(problem, capsys):
    code, rep = run(capsys, "homology", problem(HYPER))
    assert code == 0
    h = rep["outputs"]["homology"][0]
    assert h["d"] == [1, 1, 0, 0] and h["index"] == 0
    assert set(rep) == {"command", "inputs_digest", "outputs", "diagnostics", "timing"}


def test_homology_tuple_matches_library(problem, capsys):
    code, rep = run(capsys, "homology", problem(DIAG), "--point", "0,0")
    assert code == 0 and rep["outputs"]["homology"][0]["d"] == [1, 2, 1]


def test_homology_off_variety(problem, capsys):
    code, rep = run(capsys, "homology", problem(HYPER), "--point", "1,1,1")
    h = rep["outputs"]["homology"][0]
    assert code == 0 and h["d"] == [0, 0, 0, 0] and h["resolvent"]


def test_spectrum_tuple(problem, capsys):
    code, rep = run(capsys, "spectrum", problem(DIAG))
    assert code == 0 and rep["outputs"]["points"] == [["0", "0"], ["1", "2"]]


def test_spectrum_hyperbola_membership(problem, capsys):
    path = problem(HYPERBOLA)
    assert run(capsys, "spectrum", path, "--point", "2,1/2")[1]["outputs"]["member"] is True
    assert run(capsys, "spectrum", path, "--point", "0,0")[1]["outputs"]["member"] is False


def test_spectrum_point_ideal(problem, capsys):
    code, rep = run(capsys, "spectrum", problem({"vars": ["x", "y"], "ideal": ["x - 1", "y + 2"]}))
    assert code == 0 and rep["outputs"]["points"] == [["1", "-2"]]


def test_point_spectrum(problem, capsys):
    code, rep = run(capsys, "point-spectrum", problem(DIAG))
    assert code == 0 and rep["outputs"]["points"] == [["0", "0"], ["1", "2"]]


def test_samuel_and_torpoly_plane(problem, capsys):
    path = problem(PLANE)
    code, rep = run(capsys, "samuel", path, "--point", "0,0", "--rmax", "5")
    assert code == 0 and rep["outputs"]["samuel"][0]["values"] == [1, 3, 6, 10, 15]
    code, rep = run(capsys, "torpoly", path, "--point", "0,0", "--rmax", "5")
    assert code == 0 and rep["outputs"]["torpoly"][0]["tor_polynomial"] == [0, 0, 0, 0, 0]


def test_torpoly_hypersurface(problem, capsys):
    code, rep = run(capsys, "torpoly", problem(HYPER), "--rmax", "4")
    t = rep["outputs"]["torpoly"][0]
    assert code == 0 and t["tor_polynomial"] == t["samuel"] and t["tor_equals_samuel_law"]


def test_cusp_multiplicity(problem, capsys):
    code, rep = run(capsys, "samuel", problem(CUSP), "--rmax", "6")
    assert code == 0 and rep["outputs"]["samuel"][0]["multiplicity"] == 2
    code, rep = run(capsys, "serre", problem(CUSP))
    assert code == 0 and rep["outputs"]["serre"][0]["serre_consistent"]


def test_gb(problem, capsys):
    code, rep = run(capsys, "gb", problem(CUSP), "--order", "lex")
    assert code == 0 and rep["outputs"]["gb"] == ["x^3 - y^2"]


def test_h1bound(problem, capsys):
    data = {"vars": ["x", "y", "z"], "ideal": ["x^2 - y*(1 - x*z) + z^3", "x^3*y + y + (y - 1)*z^2",
                                               "x^3 + y^2*z + z^4"]}
    code, rep = run(capsys, "h1bound", problem(data), "--point", "0,0,0")
    h = rep["outputs"]["h1bound"][0]
    assert code == 0 and h["t"] == 2 and h["measured_d1"] >= 2 and h["bound_holds"]


def test_verify_suite(capsys):
    code, rep = run(capsys, "verify", "smt", "--seed", "7", "--count", "5")
    assert code == 0 and rep["outputs"]["count"] == 5 and rep["outputs"]["seed"] == 7


def test_prime_field_override(problem, capsys):
    data = {"vars": ["x"], "tuple": {"matrices": [[["0", "-1"], ["1", "0"]]]}}
    code, rep = run(capsys, "spectrum", problem(data), "--field", "GF(5)")
    assert code == 0 and rep["outputs"]["points"] == [["2"], ["3"]]


# ---- exit codes --------------------------------------------------------

def test_exit_non_split(problem, capsys):
    code, rep = run(capsys, "spectrum", problem(ROTATION))
    assert code == 3 and rep["error"]["type"] == "SpectrumNotSplit"


def test_exit_not_stabilized(problem, capsys):
    code, _ = run(capsys, "samuel", problem(CUSP), "--rmax", "2")
    assert code == 4


def test_exit_cap_exceeded(problem, capsys):
    code, _ = run(capsys, "homology", problem({"vars": ["x", "y"], "ideal": ["x^2", "x*y", "y^2"]}),
                  "--point", "0,0", "--cap", "1")
    assert code == 4


@pytest.mark.parametrize("data", [
    '{"vars": ["x"], "ideal": ["x +* 2"]}',
    '{"vars": ["x"]}',
    '{"vars": ["x"], "ideal": ["x"], "tuple": {"matrices": [[["1"]]]}}',
    '{"vars": ["x", "y"], "tuple": {"matrices": [[["0", "1"], ["0", "0"]], [["0", "0"], ["1", "0"]]]}}',
    '{"vars": ["x"], "tuple": {"matrices": [[["0", "1"]]]}}',
    'not json',
])
def test_exit_invalid_input(problem, capsys, data):
    code, _ = run(capsys, "homology", problem(data), "--point", "0")
    assert code == 2


def test_exit_unknown_suite(capsys):
    assert main(["verify", "nonsense"]) == 2


def test_exit_missing_file(capsys):
    assert main(["gb", "/nonexistent/problem.json"]) == 2


def test_exit_point_off_variety(problem, capsys):
    code, _ = run(capsys, "samuel", problem(CUSP), "--point", "1,0")
    assert code == 2


def test_exit_char_two(problem, capsys):
    code, _ = run(capsys, "h1bound", problem({"field": "GF(2)", "vars": ["x"], "ideal": ["x"]}), "--point", "0")
    assert code == 3


def test_exit_property_failure(monkeypatch, capsys):
    from koszulspec import suites
    from koszulspec.suites import InstanceResult, SuiteReport
    monkeypatch.setitem(suites.SUITES, "smt", lambda seed=7, count=1: SuiteReport(
        "smt", seed, [InstanceResult(0, False, {})]))
    assert main(["verify", "smt"]) == 1


# ---- determinism -------------------------------------------------------

def test_byte_identical_reports(problem, capsys):
    path = problem(HYPER)
    outs = []
    for _ in range(2):
        main(["torpoly", path, "--rmax", "3"])
        rep = json.loads(capsys.readouterr().out)
        rep.pop("timing")
        outs.append(json.dumps(rep, sort_keys=True))
    assert outs[0] == outs[1]


def test_pretty_output(problem, capsys):
    assert main(["homology", problem(HYPER), "--pretty"]) == 0
    assert "homology" in capsys.readouterr().out


def test_console_entry_point(problem):
    proc = subprocess.run([sys.executable, "-m", "koszulspec", "homology", problem(HYPER)],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["homology"][0]["d"] == [1, 1, 0, 0]
