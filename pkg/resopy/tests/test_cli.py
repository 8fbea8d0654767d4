from ..cli import main, build_parser, EXIT_OK, EXIT_INPUT, EXIT_NOT_POINCARE, EXIT_HAZARD
from .conftest import asset
import numpy as np
import pytest
import json


def _write(tmp_path, doc, name="field.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def _run_json(capsys, argv):
    code = main(argv + ["--json"])
    return code, json.loads(capsys.readouterr().out)


def test_analyze_report(capsys):
    code, report = _run_json(capsys, ["analyze", asset("resonant_1_2.json")])
    assert code == EXIT_OK
    assert list(report)[:6] == ["tool", "version", "command", "mode", "input", "certificate"]
    assert report["mode"] == "exact"
    assert report["certificate"]["bound_C"] == 2
    assert report["dim_g"] == 3
    assert report["versal"]["dim_S"] == 1
    assert report["input"]["options"] == {"degree": 4, "depth": 3}


def test_analyze_summary(capsys):
    assert main(["analyze", asset("diagonal_1_2.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert "Poincaré domain: yes" in out
    assert "dim S = 2" in out


def test_not_in_poincare_domain(capsys):
    code, report = _run_json(capsys, ["analyze", asset("saddle_1_m1.json")])
    assert code == EXIT_NOT_POINCARE
    assert report["certificate"]["in_domain"] is False
    assert report["error"]["type"] == "NotInPoincareDomainError"


def test_reports_are_deterministic(capsys):
    argv = ["normal-form", asset("resonant_1_2.json"), "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


@pytest.mark.parametrize("name,code", [("diagonal_1_2.json", EXIT_OK), ("resonant_1_2.json", EXIT_OK),
                                       ("saddle_1_m1.json", EXIT_NOT_POINCARE)])
def test_analyze_is_deterministic(capsys, name, code):
    argv = ["analyze", asset(name), "--json"]
    assert main(argv) == code
    first = capsys.readouterr().out
    assert main(argv) == code
    assert capsys.readouterr().out == first
    assert json.loads(first)


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    assert main(["resonances", asset("resonant_1_2.json"), "--json", "--output", str(target)]) == EXIT_OK
    out = capsys.readouterr().out
    assert target.read_text(encoding="utf-8") == out
    report = json.loads(out)
    assert report["dim_g"] == 3
    assert report["support"]["triangular"] == [{"j": 2, "m": [2, 0]}]


def test_input_errors(capsys, tmp_path):
    assert main(["analyze", str(tmp_path / "missing.json")]) == EXIT_INPUT
    assert "invalid field specification" in capsys.readouterr().err
    path = _write(tmp_path, {"n": 1, "lambda": [1]})
    assert main(["analyze", path]) == EXIT_INPUT
    assert "(key: n)" in capsys.readouterr().err


def test_library_value_error_is_input_error(capsys, tmp_path):
    path = _write(tmp_path, {"n": 2, "lambda": [1, 2], "terms": [{"j": 2, "m": [1, 0], "a": 1}]})
    assert main(["normal-form", path]) == EXIT_INPUT
    assert "normal-form" in capsys.readouterr().err


def test_flow(capsys):
    code, report = _run_json(capsys, ["flow", asset("diagonal_1_2.json")])
    assert code == EXIT_OK
    value = np.array([complex(*z) for z in report["flow"]["value"]])
    assert np.allclose(value, [np.e, np.e ** 2])
    assert report["flow"]["rk4"]["max_abs_difference"] < 1e-8
    code, report = _run_json(capsys, ["flow", asset("resonant_1_2.json"), "--z0", "1,2", "--t", "0.5j"])
    assert code == EXIT_OK
    assert report["flow"]["degrees"] == [0, 1]


def test_flow_outside_poincare_domain(capsys):
    code, report = _run_json(capsys, ["flow", asset("saddle_1_m1.json")])
    assert code == EXIT_OK
    value = np.array([complex(*z) for z in report["flow"]["value"]])
    assert np.allclose(value, [np.e, 1 / np.e])


def test_scan_saddle(capsys):
    code, report = _run_json(capsys, ["scan", asset("saddle_1_m1.json")])
    assert code == EXIT_OK
    assert report["scan"]["samples"] == 10004
    assert report["scan"]["violation"] is True
    code, report = _run_json(capsys, ["scan", asset("diagonal_1_2.json"), "--samples", "100", "--radius", "0.5"])
    assert report["scan"]["violation"] is False
    assert report["scan"]["radius"] == 0.5


def test_small_divisor_exit_code(capsys, tmp_path):
    path = _write(tmp_path, {"n": 2, "lambda": [1, 2.00000001], "terms": [{"j": 2, "m": [2, 0], "a": 1}]})
    code, report = _run_json(capsys, ["normal-form", path])
    assert code == EXIT_HAZARD
    assert report["mode"] == "float"
    assert report["error"]["type"] == "SmallDivisorError"
    assert report["error"]["j"] == 2
    assert report["error"]["m"] == [2, 0]


def test_versal_command(capsys):
    code, report = _run_json(capsys, ["versal", asset("diagonal_1_2.json"), "--method", "orthogonal",
                                      "--degree", "2"])
    assert code == EXIT_OK
    assert report["versal"]["method"] == "orthogonal"
    assert report["versal"]["dim_S"] == 2
    assert report["direct_sum"]["holds"] is True


def test_probe_command(capsys):
    code, report = _run_json(capsys, ["probe", asset("resonant_1_2.json"), "--degree", "2"])
    assert code == EXIT_OK
    probe = report["probe"]
    assert probe["sigma"]["depth"] == 3
    assert probe["sigma"]["injective"] is True
    assert probe["theta"]["depth"] == 3
    assert probe["h0"]["kernel_is_constants"] is True
    assert probe["gperp"]["injective"] is True


def test_version(capsys):
    with pytest.raises(SystemExit) as err:
        build_parser().parse_args(["--version"])
    assert err.value.code == 0
    assert "resopy 0.3.0" in capsys.readouterr().out


def test_rational_option_strings(capsys, tmp_path):
    path = _write(tmp_path, {"n": 2, "lambda": [1, -1], "options": {"radius": "1/2", "samples": 10}})
    code, report = _run_json(capsys, ["scan", path])
    assert code == EXIT_OK
    assert report["scan"]["radius"] == 0.5
    assert report["input"]["options"]["radius"] == 0.5


def test_bad_tolerance_is_input_error(capsys, tmp_path):
    path = _write(tmp_path, {"n": 2, "lambda": [1.5, 2]})
    assert main(["analyze", path, "--tol", "-1"]) == EXIT_INPUT
    assert "tolerance" in capsys.readouterr().err
    path = _write(tmp_path, {"n": 2, "lambda": [1, 2], "options": {"steps": 0}}, name="steps.json")
    assert main(["flow", path]) == EXIT_INPUT
