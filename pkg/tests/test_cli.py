import json
import math

import numpy as np
import pytest

from betajacobi.asymptotics import DerivativeBundle, voronovskaya_limit
from betajacobi.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    """Split CSV sections into lists of (header, rows)."""
    sections = []
    for block in text.strip("\n").split("\n\n"):
        lines = block.split("\n")
        header = lines[0].split(",")
        rows = [line.split(",") for line in lines[1:]]
        sections.append((header, rows))
    return sections


def column(section, name):
    header, rows = section
    i = header.index(name)
    return np.array([float(r[i]) for r in rows])


def test_evaluate_linear_preserved(capsys):
    code, out, _ = run(capsys, "evaluate", "--f", "poly:0,1", "--alpha", "-1", "--beta", "-1")
    assert code == 0
    sec = parse_csv(out)[0]
    np.testing.assert_allclose(column(sec, "value"), column(sec, "x"), atol=1e-14)


def test_evaluate_constant(capsys):
    code, out, _ = run(capsys, "evaluate", "--f", "poly:1", "--alpha", "0.5", "--beta", "2")
    np.testing.assert_allclose(column(parse_csv(out)[0], "value"), 1.0, atol=1e-13)


def test_evaluate_exp_near_voronovskaya_prediction(capsys):
    code, out, _ = run(capsys, "evaluate", "--f", "exp", "--n", "100", "--x", "0.5")
    value = column(parse_csv(out)[0], "value")[0]
    x = 0.5
    predicted = math.exp(x) + voronovskaya_limit(DerivativeBundle(x, (math.exp(x),) * 3), 0, 0) / 100
    assert abs(value - predicted) < 1e-3
    assert column(parse_csv(out)[0], "first_order_prediction")[0] == pytest.approx(predicted, abs=1e-6)


@pytest.mark.parametrize("spec, tol", [("sin", "1e-12"), ("abs-shift", "1e-5")])
def test_evaluate_other_builtins(capsys, spec, tol):
    # the kink of abs-shift limits Gauss-Jacobi convergence, hence the looser tol
    code, out, _ = run(capsys, "evaluate", "--f", spec, "--x-grid", "0:1:5", "--tol", tol)
    assert code == 0 and len(parse_csv(out)[0][1]) == 5


def test_unknown_function_is_usage_error(capsys):
    code, _, err = run(capsys, "evaluate", "--f", "tan")
    assert code == 2
    assert "unknown function" in err


def test_argparse_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["moments", "--n", "many"])
    assert info.value.code == 2


def test_moments_columns(capsys):
    code, out, _ = run(capsys, "moments", "--alpha", "-1", "--beta", "-1", "--m-max", "3")
    sec = parse_csv(out)[0]
    assert sec[0] == ["x", "T0", "T1", "T2", "T3"]
    np.testing.assert_array_equal(column(sec, "T1"), 0.0)
    np.testing.assert_array_equal(column(sec, "T0"), 1.0)


def test_moments_verify(capsys):
    code, out, _ = run(capsys, "moments", "--n", "10", "--m-max", "6", "--verify")
    assert code == 0
    assert np.all(column(parse_csv(out)[0], "max_oracle_deviation") < 1e-9)


def test_profile_constant(capsys):
    code, out, err = run(capsys, "profile", "--n", "6", "--alpha", "0")
    series, summary = parse_csv(out)
    np.testing.assert_allclose(column(series, "T2"), 1 / 36, atol=1e-16)
    assert summary[1][0][summary[0].index("shape")] == "CONSTANT"
    assert "shape=CONSTANT" in err


def test_profile_other_shapes(capsys):
    _, out, _ = run(capsys, "profile", "--n", "6", "--alpha", "-1")
    series, summary = parse_csv(out)
    x = column(series, "x")
    np.testing.assert_allclose(column(series, "T2"), x * (1 - x) / 7, atol=1e-16)
    assert summary[1][0][3] == "ENDPOINT_FAVORED"
    _, out, _ = run(capsys, "profile", "--n", "6", "--alpha", "3")
    assert parse_csv(out)[1][1][0][3] == "CENTER_FAVORED"


@pytest.mark.parametrize("l, x, target", [(1, 0.5, 0.25), (1, 0.0, 0.0), (2, 0.5, 3 / 16)])
def test_asymptotics(capsys, l, x, target):
    code, out, _ = run(capsys, "asymptotics", "--l", str(l), "--x", str(x))
    summary = parse_csv(out)[1]
    assert column(summary, "even_target")[0] == pytest.approx(target, abs=1e-16)
    assert column(summary, "even_extrapolated")[0] == pytest.approx(target, abs=1e-4)


def test_iterate_regular(capsys):
    code, out, _ = run(capsys, "iterate", "--p", "0,1", "--iters", "200")
    deviations, limit = parse_csv(out)
    np.testing.assert_allclose(column(limit, "limit_value"), 0.5, atol=1e-15)
    dev = column(deviations, "sup_deviation")
    assert dev[-1] < 1e-10 and np.all(np.diff(dev) < 0)


def test_iterate_boundary(capsys):
    code, out, _ = run(capsys, "iterate", "--alpha", "-1", "--beta", "-1", "--p", "0,1", "--measure")
    assert code == 0
    deviations, limit = parse_csv(out)
    np.testing.assert_allclose(column(limit, "limit_value"), column(limit, "x"))
    assert np.all(column(deviations, "sup_deviation") < 1e-13)


def test_iterate_measure(capsys):
    code, out, _ = run(capsys, "iterate", "--measure", "--k-max", "2", "--n", "1000")
    measure = parse_csv(out)[2]
    assert column(measure, "mu_limit")[2] == pytest.approx(0.3, abs=1e-16)
    assert column(measure, "mu_n")[2] == pytest.approx(0.3, abs=1e-3)


def test_csv_format_contract(capsys):
    _, out, _ = run(capsys, "moments", "--x", "0.1")
    assert "\r" not in out and out.endswith("\n")
    header, rows = parse_csv(out)[0]
    assert rows[0][0] == "0.10000000000000001"  # 17 significant digits
    assert all(float(v) == float(repr(float(v))) for v in rows[0])


def test_json_output(capsys):
    code, out, _ = run(capsys, "moments", "--format", "json", "--m-max", "2")
    doc = json.loads(out)
    assert doc["columns"] == ["x", "T0", "T1", "T2"]
    assert len(doc["rows"]) == 11
    assert doc["config"]["m_max"] == 2 and doc["config"]["command"] == "moments"
    assert doc["meta"]["tool"] == "betajacobi" and "version" in doc["meta"]


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"n": 6, "alpha": 0.0, "x_grid": "0:1:3"}))
    _, out, _ = run(capsys, "profile", "--config", str(cfg))
    np.testing.assert_allclose(column(parse_csv(out)[0], "T2"), 1 / 36, atol=1e-16)
    _, out, _ = run(capsys, "profile", "--config", str(cfg), "--alpha", "-1")
    assert parse_csv(out)[1][1][0][3] == "ENDPOINT_FAVORED"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"bogus": 1}))
    assert run(capsys, "profile", "--config", str(bad))[0] == 2


def test_out_path(tmp_path, capsys):
    path = tmp_path / "m.csv"
    code, out, _ = run(capsys, "moments", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("x,T0")


def test_tolerance_failure_exit_code(capsys):
    code, _, err = run(capsys, "evaluate", "--f", "abs-shift", "--x", "0.37", "--tol", "1e-15")
    assert code == 3
    assert "tolerance" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["evaluate", "--f", "sin"],
        ["moments", "--verify", "--m-max", "5"],
        ["profile", "--n", "9", "--alpha", "0.4"],
        ["asymptotics", "--l", "2"],
        ["iterate", "--p", "1,2,3", "--measure"],
    ],
)
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second
    json_a = run(capsys, *argv, "--format", "json")
    json_b = run(capsys, *argv, "--format", "json")
    assert json_a == json_b
