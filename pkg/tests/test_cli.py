import io
import json
import subprocess
import sys

import pytest

from skewplanes import verify
from skewplanes.cli import main
from skewplanes.surface import CubicForm


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_membership_of_bundled_plane(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["membership", "data:determinantal_example_reconstructed.json"])
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "Member" and obj["sym2_rank"] == 9 and obj["qrank"] == 4


def test_family_pipes_into_surface(capsys, monkeypatch):
    code, plane, _ = run(capsys, monkeypatch, ["family", "cayley", "--params", "0,0,0,0,0"])
    assert code == 0
    code, out, _ = run(capsys, monkeypatch, ["surface", "-", "--cone"], stdin=plane)
    assert code == 0
    cubic = json.loads(out)["cubic"]
    computed = CubicForm.parse(cubic["text"])
    assert CubicForm.parse("x0^2*x2 + x1^2*x3").ratio_to(computed) is not None
    assert json.loads(out)["cone_vertex"] is None


def test_sample_pipes_into_tangent(capsys, monkeypatch):
    _, plane, _ = run(capsys, monkeypatch, ["family", "sample", "--seed", "1", "--bound", "3"])
    code, out, _ = run(capsys, monkeypatch, ["tangent", "-"], stdin=plane)
    assert code == 0 and json.loads(out) == {"tangent_dimension": 38}


def test_surface_split_and_singularities(capsys, monkeypatch):
    _, plane, _ = run(capsys, monkeypatch, ["family", "type2"])
    code, out, _ = run(capsys, monkeypatch, ["surface", "-", "--split", "--singularities"], stdin=plane)
    obj = json.loads(out)
    assert code == 0 and obj["split"]["quadric_rank"] == 4


def test_flux_and_classify(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["flux", "data:cayley_zero.json", "--u", "0,0,0,0"])
    assert code == 0 and json.loads(out)["V"] == "degenerate"
    code, out, _ = run(capsys, monkeypatch, ["flux", "data:cayley_zero.json", "--u", "1,2,3,4"])
    assert code == 0 and len(json.loads(out)["V"]) == 4
    code, out, _ = run(capsys, monkeypatch, ["classify-plane", "data:type4_three_plane.json"])
    assert code == 0 and json.loads(out) == {"type": 4}


def test_pretty_output_is_indented(capsys, monkeypatch):
    _, out, _ = run(capsys, monkeypatch, ["--pretty", "family", "type2"])
    assert out.startswith("{\n  ")
    _, out2, _ = run(capsys, monkeypatch, ["family", "type2", "--pretty"])
    assert out2 == out


@pytest.mark.parametrize(
    "argv, stdin, needle",
    [
        (["membership", "-"], "{not json", "line 1 column"),
        (["membership", "-"], '{"basis": [[[0, 1, "1/0"]]]}', "basis[0][0][2]"),
        (["membership", "-"], '{"basis": [[[0, 1, "1"]]]}', "expected 4 forms"),
        (["membership", "/nonexistent/plane.json"], None, "/nonexistent/plane.json"),
        (["family", "cayley", "--params", "1,2"], None, "takes 5 values"),
        (["flux", "data:type2.json", "--u", "1,2"], None, "--u"),
        (["membership", "data:nope.json"], None, "unknown bundled plane"),
        (["verify-paper", "--filter", "zzz"], None, "no case id"),
    ],
)
def test_malformed_input_exits_2(capsys, monkeypatch, argv, stdin, needle):
    code, out, err = run(capsys, monkeypatch, argv, stdin)
    assert code == 2 and out == ""
    assert needle in err


def test_usage_error_exits_2(capsys, monkeypatch):
    code, _, _ = run(capsys, monkeypatch, ["frobnicate"])
    assert code == 2


def test_filter_runs_only_matching_cases(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["verify-paper", "--filter", "cayley"])
    obj = json.loads(out)
    assert [c["id"] for c in obj["cases"]] == ["cayley.family"]
    assert code == (0 if obj["summary"]["failed"] == 0 else 1)


def test_verify_output_is_byte_stable(capsys, monkeypatch):
    _, first, _ = run(capsys, monkeypatch, ["verify-paper", "--filter", "exterior"])
    verify.run_case.cache_clear()
    _, second, _ = run(capsys, monkeypatch, ["verify-paper", "--filter", "exterior"])
    assert first == second


def test_corrupted_golden_value_fails_with_diff(capsys, monkeypatch):
    code, _, _ = run(capsys, monkeypatch, ["verify-paper", "--filter", "type3"])
    assert code == 0
    monkeypatch.setitem(verify.GOLDEN, "type3_quadric_rank", 4)
    verify.run_case.cache_clear()
    try:
        code, out, _ = run(capsys, monkeypatch, ["verify-paper", "--filter", "type3"])
    finally:
        verify.run_case.cache_clear()
    case = json.loads(out)["cases"][0]
    assert code == 1 and case["status"] == "fail"
    assert case["details"]["split"]["quadric_rank"] == 3


def test_console_script_and_module_entry_points():
    out = subprocess.run(
        [sys.executable, "-m", "skewplanes", "family", "semisimple", "--params", "1,1,0"],
        capture_output=True, text=True, check=True,
    ).stdout
    assert len(json.loads(out)["basis"]) == 3
    res = subprocess.run(["planes", "membership", "data:type2.json"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["verdict"] == "Member"
