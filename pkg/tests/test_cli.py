import io
import json
import subprocess
import sys

import pytest

from realfib.cli import run
from realfib.report import Report


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def call_json(*argv):
    code, text = call(*argv, "--json")
    return code, json.loads(text) if text else None


def test_interlace_example():
    code, rep = call_json("interlace", "--f", "s^3-4*s*t^2", "--g", "s^2*t-t^3")
    assert code == 0
    assert rep["certificates"]["bezoutian"] == [["1", "0", "-1"], ["0", "3", "0"], ["-1", "0", "4"]]
    assert rep["certificates"]["signature"] == [3, 0, 0]
    assert rep["verdicts"]["pair"] == "RealFiberedInterlacing"
    assert rep["schema"] == 1


def test_project_curve_matches_interlace():
    _, a = call_json("interlace", "--f", "s^3-4*s*t^2", "--g", "s^2*t-t^3")
    code, b = call_json("hyperbolic", "project-curve", "--center", "x0-4*x2", "--center", "x1-x3")
    assert code == 0
    for key in ("f", "g", "bezoutian", "signature"):
        assert a["certificates"][key] == b["certificates"][key]


def test_tv_screen():
    code, rep = call_json("demo", "tv-screen")
    assert code == 1
    assert rep["certificates"]["reason"] == "g+1-s=3 odd"


def test_tracetest_witness():
    code, rep = call_json("tracetest", "--q", "t^2 - z")
    assert code == 1
    assert rep["certificates"]["witness"] == {"z": "-1"}
    code, _ = call_json("tracetest", "--q", "t^2 - z^2 - 1")
    assert code == 0


def test_tracetest_from_map():
    assert call_json("tracetest", "--f", "s^2-t^2", "--g", "2*s*t")[0] == 0
    assert call_json("tracetest", "--f", "s^2", "--g", "t^2")[0] == 1


@pytest.mark.parametrize("argv,code", [
    (["realroots", "--p", "t^3 - 4*t"], 0),
    (["realroots", "--p", "t^2 + 1"], 1),
    (["interlace", "--f", "s^2", "--g", "t^2"], 1),
    (["interlace", "--f", "s^2", "--g", "s*t"], 1),
    (["interlace", "--f", "s^2 +", "--g", "t^2"], 2),
    (["interlace", "--f", "s^2", "--g", "t^3"], 2),
    (["realroots", "--p", "0"], 2),
    (["realroots", "--p", "s*t"], 2),
    (["hyperbolic", "search", "--f", "x2^2-x0^2-x1^2", "--e", "0,0,1", "--budget", "30"], 3),
    (["hyperbolic", "search", "--f", "x2^2-x0^2-x1^2", "--e", "1,0,0"], 1),
    (["hyperbolic", "search", "--f", "x2^2-x0^2-x1^2", "--e", "1,0,1"], 2),
    (["hyperbolic", "direction", "--f", "x2^2-x0^2-x1^2", "--e", "0,0,1", "--x", "1,2,3"], 0),
    (["hyperbolic", "parity", "--genus", "3", "--components", "2"], 0),
    (["hyperbolic", "intersect", "--f", "x0^2+x1^2-x2^2", "--g", "x0"], 0),
    (["hyperbolic", "intersect", "--f", "x0^2+x1^2-x2^2", "--g", "x0*x2"], 1),
    (["demo", "twisted-cubic"], 0),
    (["demo", "mobius", "4"], 0),
    (["demo", "double-cover"], 0),
    (["demo", "veronese"], 1),
    (["demo", "edge-quartic", "--samples", "3"], 0),
    (["nonsense"], 2),
])
def test_exit_codes(argv, code):
    assert call(*argv)[0] == code


def test_pencil_search_and_detrep():
    pencil = json.dumps([[["1", "0"], ["0", "1"]], [["1", "0"], ["0", "-1"]], [["0", "1"], ["1", "0"]]])
    assert call("hyperbolic", "search", "--pencil", pencil, "--e", "1,0,0")[0] == 0
    tensor = json.dumps({"pencil": json.loads(pencil)})
    # det = x0^2 - x1^2 - x2^2
    assert call("detrep", "member", "--tensor", tensor, "--point", "1,1,0")[0] == 0
    assert call("detrep", "member", "--tensor", tensor, "--point", "1,0,0")[0] == 1
    comps = json.dumps([{"label": "C", "forms": ["s^2+t^2", "s^2-t^2", "2*s*t"], "degree": 2}])
    code, rep = call_json("detrep", "cycle", "--tensor", tensor, "--components", comps)
    assert code == 0 and rep["certificates"]["degree"] == 2


def test_detrep_center():
    tensor = json.dumps({"d": 2, "k": 0, "form": "dual", "coeffs": [
        {"key": [0, 1], "matrix": [["1"]]}, {"key": [0, 2], "matrix": [["2"]]}, {"key": [1, 2], "matrix": [["3"]]}]})
    code, rep = call_json("detrep", "center", "--tensor", tensor, "--W", "[[1,0,0],[0,1,1]]")
    assert code == 0 and rep["certificates"]["matrix"] == [["3"]]


def test_koszul_system_file(tmp_path):
    system = {"d": 2, "k": 1, "matrices": [[["z0 - z1", "0"], ["0", "z0 - 2*z1"]]]}
    path = tmp_path / "sys.json"
    path.write_text(json.dumps(system))
    code, rep = call_json("koszul", "--system", str(path))
    assert code == 0
    assert rep["verdicts"]["exact_off_variety"] is True
    code, rep = call_json("koszul", "--d", "3", "--k", "1", "--n", "2", "--seed", "4")
    assert code == 0 and rep["verdicts"]["center"] == "PositiveDefinite"


def test_koszul_non_commuting_is_invalid():
    system = {"d": 2, "k": 0, "matrices": [[["z1", "z2"], ["z2", "0"]], [["z2", "0"], ["0", "z1"]]]}
    assert call("koszul", "--system", json.dumps(system))[0] == 2


def test_same_seed_same_bytes():
    a = call("demo", "veronese", "--seed", "7", "--json")
    b = call("demo", "veronese", "--seed", "7", "--json")
    assert a == b
    c = call("hyperbolic", "search", "--f", "x0^4+x1^4+x2^4", "--e", "1,0,0", "--seed", "3", "--json")
    assert json.loads(c[1])["seed"] == 3


@pytest.mark.parametrize("argv", [
    ["interlace", "--f", "s^2", "--g", "t^2"],
    ["demo", "edge-quartic", "--samples", "2"],
    ["tracetest", "--q", "t^2 - z"],
    ["koszul", "--d", "2", "--k", "0"],
])
def test_reports_round_trip(argv):
    _, text = call(*argv, "--json")
    rep = Report.from_json(text)
    assert rep.to_json() == text.strip()
    assert Report.from_json(rep.to_json()) == rep


def test_timing_is_opt_in():
    _, rep = call_json("demo", "tv-screen")
    assert rep["timing"] is None
    _, rep = call_json("demo", "tv-screen", "--timing")
    assert rep["timing"] >= 0


def test_human_output():
    code, text = call("interlace", "--f", "s^3-4*s*t^2", "--g", "s^2*t-t^3")
    assert "pair: RealFiberedInterlacing" in text
    assert "[1, 0, -1]" in text


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "realfib", "demo", "tv-screen"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "g+1-s=3 odd" in proc.stdout
