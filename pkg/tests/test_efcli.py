#-----------------------------------------------------------------------------+
# test_efcli.py
#-----------------------------------------------------------------------------+
import json, pytest
from efconstants import *
from ef_logging.ef_logging import ef_logging_setup
from model.efmodelerrors import RoundingFailure
from view.efcli import EFView, build_parser, error_report, render_text, run

logger = ef_logging_setup(EF_APP_NAME)
logger.debug(f"Imported module: {__name__}")

def _run_json(capsys, argv: list, expected_code: int = EF_EXIT_OK) -> dict:
    code = run(argv)
    out = capsys.readouterr().out
    assert code == expected_code, f"{argv} exited {code}: {out}"
    return json.loads(out)

#-----------------------------------------------------------------------------+
#region parsing and exit codes
def test_parser_subcommands():
    parser = build_parser()
    args = parser.parse_args(["ligozat", "--level", "4", "--exps", "1:-8,4:8", "--digits", "60"])
    assert args.command == "ligozat" and args.exps == {1: -8, 4: 8} and args.digits == 60
    args = parser.parse_args(["decompose", "--level", "8", "--exps", "4:8,1:-8",
                              "--exps", "2:4", "--coeffs", "1,1/2"])
    assert args.exps == [{4: 8, 1: -8}, {2: 4}] and args.coeffs[1] == 0.5
    assert parser.parse_args(["degree", "--disc", "-7"]).conductor == 1

@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["ligozat", "--level", "4"],
    ["ligozat", "--level", "4", "--exps", "1-8"],
    ["decompose", "--level", "6", "--exps", "1:1"],
    ["tower-split", "--level", "2", "--exps", "1:1"],
    ["degree", "--disc", "-7", "--digits", "10"],
    ["degree", "--disc", "-7", "--json", "--text"],
    ["verify-identities", "--ns", "3,x"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == EF_EXIT_USAGE, f"{argv} is a usage error"
    assert capsys.readouterr().out == "", "usage errors write nothing to stdout"

def test_help_exits_0(capsys):
    assert run(["--help"]) == EF_EXIT_OK
    assert "min-poly" in capsys.readouterr().out

def test_computation_error_exit_1(capsys):
    data = _run_json(capsys, ["degree", "--disc", "-12"], EF_EXIT_FAILURE)
    assert data["error"] == "NotFundamental" and data["details"] == {}
    data = _run_json(capsys, ["decompose", "--level", "4", "--exps", "1:-8,4:8",
                              "--exps", "2:4", "--coeffs", "1"], EF_EXIT_FAILURE)
    assert data["error"] == "ValueError"

def test_rounding_failure_exit_1(capsys, monkeypatch):
    def fail(*args, **kwargs):
        raise RoundingFailure("too far", residual="1e-3", digits=300, advised_digits=450)
    monkeypatch.setattr("viewmodel.main_efviewmodel.stable_min_poly", fail)
    data = _run_json(capsys, ["min-poly", "--disc", "-7", "--conductor", "12"], EF_EXIT_FAILURE)
    assert data == {"error": "RoundingFailure", "message": "too far",
                    "details": {"max_rounding_residual": "1e-3", "digits": 300,
                                "advised_digits": 450}}

def test_failed_check_exit_1(capsys, monkeypatch):
    monkeypatch.setattr("viewmodel.main_efviewmodel.verify_sign_flip", lambda *args: False)
    data = _run_json(capsys, ["verify-sign-flip", "--m", "3", "--disc", "-7", "--digits", "60"],
                     EF_EXIT_FAILURE)
    assert data["pass"] is False
#endregion parsing and exit codes
#-----------------------------------------------------------------------------+
#region output handling
def test_text_and_out(capsys, tmp_path):
    argv = ["degree", "--disc", "-7", "--conductor", "12"]
    assert run(argv + ["--text"]) == EF_EXIT_OK
    text = capsys.readouterr().out
    assert "degree: 8" in text and "order:" in text and "  d_K: -7" in text
    out = tmp_path / "degree.json"
    assert run(argv + ["--out", str(out)]) == EF_EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text())["degree"] == 8

def test_output_is_deterministic(capsys):
    argv = ["coset-reps", "--disc", "-7", "--conductor", "12"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first

def test_env_digits(capsys, monkeypatch):
    monkeypatch.setenv(EF_ENV_DIGITS, "60")
    data = _run_json(capsys, ["class-invariant", "--disc", "-7", "--conductor", "12"])
    assert data["value"]["digits"] == 60
    data = _run_json(capsys, ["class-invariant", "--disc", "-7", "--conductor", "12",
                              "--digits", "70"])
    assert data["value"]["digits"] == 70, "flags override the environment"

def test_render_text_and_error_report():
    text = render_text({"a": 1, "b": [1, 2], "c": {"d": "x"}, "e": [{"f": 1}, {"f": 2}]})
    assert text == "a: 1\nb: 1, 2\nc:\n  d: x\ne:\n  - f: 1\n  - f: 2\n"
    report = error_report(ValueError("bad"))
    assert report == {"error": "ValueError", "message": "bad", "details": {}}
#endregion output handling
#-----------------------------------------------------------------------------+
#region subcommands
def test_ligozat_and_expand(capsys):
    data = _run_json(capsys, ["ligozat", "--level", "4", "--exps", "1:-8,4:8"])
    assert data["passes"] is True and data["weight"] == "0"
    assert data["quotient"] == {"level": 4, "exps": {"1": -8, "4": 8}}
    data = _run_json(capsys, ["expand", "--level", "4", "--exps", "1:-8,4:8", "--trunc", "20"])
    coeffs = data["series"]["coeffs"]
    assert data["series"]["trunc"] == "20" and coeffs[0]["exp"] == "1"
    assert [c["val"]["coeffs"]["0"] for c in coeffs[:3]] == ["1", "8", "44"]

def test_cusp_orders(capsys):
    data = _run_json(capsys, ["cusp-orders", "--level", "4", "--exps", "1:-8,4:8"])
    assert data["total"] == "0" and data["holomorphic"] is False
    assert len(data["orders"]) == 3

def test_enumerate(capsys):
    data = _run_json(capsys, ["enumerate", "--level", "4", "--weight", "2", "--bound", "8"])
    assert data["count"] == len(data["quotients"]) > 0
    assert all(q["level"] == 4 for q in data["quotients"])

def test_decompose_and_tower_split(capsys):
    data = _run_json(capsys, ["decompose", "--level", "8", "--exps", "1:-16,2:24,4:-8",
                              "--degree-bound", "2"])
    assert data["decomposition"]["level"] == 8 and data["decomposition"]["weight"] == 0
    assert data["decomposition"]["terms"], "empty decomposition"
    data = _run_json(capsys, ["tower-split", "--level", "8", "--exps", "1:-8,4:8",
                              "--degree-bound", "2"])
    assert data["n"] == 3 and data["c1"]["terms"] == []
    assert data["c0"]["terms"] == [{"coeff": "1", "quotient": {"level": 4, "exps": {"1": -8, "4": 8}}}]

def test_j4_relation(capsys):
    data = _run_json(capsys, ["j4-relation", "--degree-bound", "6"])
    assert len(data["A"]) == 7 and data["pole_order"] == 4

def test_degree_and_coset_reps(capsys):
    data = _run_json(capsys, ["degree", "--disc", "-7", "--conductor", "12"])
    assert (data["class_number"], data["degree"], data["cosets"]) == (1, 8, 8)
    data = _run_json(capsys, ["degree", "--disc", "-23"])
    assert (data["degree"], data["cosets"]) == (3, 1)
    data = _run_json(capsys, ["coset-reps", "--disc", "-7", "--conductor", "12"])
    assert data["count"] == 8 and data["closed"] is True
    assert data["reps"][0] == {"d": 1, "alpha": [[1, 0], [0, 1]], "lift": [[1, 0], [0, 1]]}

def test_class_invariant_sign_flip_integrality(capsys):
    data = _run_json(capsys, ["class-invariant", "--disc", "-7", "--conductor", "12",
                              "--digits", "60"])
    assert data["real"] is True and data["value"]["digits"] == 60
    data = _run_json(capsys, ["verify-sign-flip", "--m", "3", "--disc", "-7", "--digits", "60"])
    assert data["pass"] is True and data["relative_degree"] == 2
    data = _run_json(capsys, ["integrality", "--multiplier", "2", "--disc", "-4", "--digits", "60"])
    assert data["poly"][0] == "1" and data["poly"][-1] == "-8" and data["degree"] == 12

@pytest.mark.slow
def test_verify_identities(capsys):
    data = _run_json(capsys, ["verify-identities", "--trunc", "20", "--ns", "3,4"])
    assert data["pass"] is True and all(r["pass"] for r in data["reports"])

@pytest.mark.slow
def test_min_poly_example(capsys):
    data = _run_json(capsys, ["min-poly", "--disc", "-7", "--conductor", "12", "--digits", "300"])
    assert data["degree"] == 8 and data["stable"] is True and data["poly"][0] == "1"
#endregion subcommands
#-----------------------------------------------------------------------------+
#region EFView
def test_efview_datacontext():
    view = EFView()
    assert view.datacontext is not None and "min-poly" in view.datacontext.commands
    assert view.run(["degree", "--disc", "-4", "--conductor", "2"]) == EF_EXIT_OK
    assert view.datacontext.run_config.digits == EF_DEFAULT_DIGITS
    assert not view.datacontext.initialized, "the viewmodel is stopped after each run"
#endregion EFView
#-----------------------------------------------------------------------------+
