import json
from importlib import resources

import jsonschema
import pytest

from pvp.cli import main, run
from pvp.config import Settings


def schema(command):
    text = resources.files("pvp").joinpath(f"schemas/{command}.json").read_text()
    return json.loads(text)


def invoke(capsys, command, payload, *flags):
    code = main([command, "--input", json.dumps(payload), *flags])
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, schema(command))
    return code, report


def test_prolong(capsys):
    code, report = invoke(capsys, "prolong", {"spec": "shift", "A": [["x"]], "n": 2})
    assert code == 0
    rows = [[b[0][0] for b in row] for row in report["result"]["blocks"]]
    assert rows == [["x", "0", "0"], ["1", "x", "0"], ["0", "2", "x"]]
    assert report["inputs_echo"]["input"]["n"] == 2


def test_prolong_order_bound(capsys):
    code, report = invoke(capsys, "prolong", {"A": [["x"]], "n": 3}, "--order", "2")
    assert code == 2 and "exceeds" in report["error"]


def test_verify_and_corruption(capsys):
    code, report = invoke(capsys, "verify", {"spec": "q_dilation", "A": [["q*x", "1"], ["0", "x"]], "n": 2})
    assert code == 0
    assert report["result"] == {"fundamental": True, "leibniz_orders_checked": [0, 1, 2]}
    code, report = invoke(capsys, "verify", {"A": [["x"]], "n": 1, "corrupt": {"row": 1, "col": 0}})
    assert code == 1 and report["result"]["fundamental"] is False


def test_compose(capsys):
    code, report = invoke(capsys, "compose", {"spec": "shift", "A": [["x"]], "l": 3})
    assert code == 0 and report["result"]["A_l"] == [["x^3 + 3*x^2 + 2*x"]]
    assert [c["name"] for c in report["checks"]] == ["cocycle_1_2", "cocycle_2_1"]


def test_jets(capsys):
    payload = {"spec": "shift", "a": {"order": 1, "matrices": [[["2"]], [["3"]]]}}
    code, report = invoke(capsys, "jets", payload)
    assert code == 0
    assert report["result"]["inverse_a"]["matrices"] == [[["1/2"]], [["-3/4"]]]


def test_check_invariance(capsys):
    base = {"order": 0, "m": 2, "generators": ["Y0_12", "Y0_21"]}
    code, report = invoke(capsys, "check-invariance", {**base, "jet": {"order": 0, "matrices": [[["2", "0"], ["0", "5"]]]}})
    assert code == 0 and report["result"]["invariant"] is True
    code, report = invoke(capsys, "check-invariance", {**base, "jet": {"order": 0, "matrices": [[["0", "1"], ["1", "0"]]]}})
    assert code == 1 and report["result"]["failing_generator"] == 0


def test_check_invariance_budget(capsys):
    payload = {
        "order": 0, "m": 2,
        "generators": ["Y0_11^2 - Y0_12*Y0_21", "Y0_11*Y0_12 - Y0_22", "Y0_12^2 - Y0_11"],
        "jet": {"order": 0, "matrices": [[["1", "0"], ["0", "1"]]]},
    }
    code, report = invoke(capsys, "check-invariance", payload, "--budget", "1")
    assert code == 3 and report["status"] == "budget_exceeded"


def test_components(capsys):
    code, report = invoke(capsys, "components", {"r": [2]})
    assert code == 0
    assert report["result"]["l"] == 2 and report["result"]["orbits"] == [[0, 1]]
    assert report["result"]["idempotents"] == ["(1/2) + (1/2)*y", "(1/2) + (-1/2)*y"]


def test_exact_seq(capsys):
    code, report = invoke(capsys, "exact-seq", {"r": [6]})
    assert code == 0
    result = report["result"]
    assert (result["exact"], result["l"], result["group_order"], result["kernel_order"]) == (True, 6, 6, 1)


def test_exact_seq_rejects_split_model(capsys):
    code, report = invoke(capsys, "exact-seq", {"r": [2, 2]})
    assert code == 2


@pytest.mark.parametrize(
    "command, payload",
    [
        ("prolong", {"A": [["x +"]], "n": 1}),
        ("prolong", {"A": [["x"]]}),
        ("prolong", {"A": [["x", "1"]], "n": 1}),
        ("prolong", {"A": [["x", "x"], ["1", "1"]], "n": 1}),
        ("prolong", {"spec": "mahler", "A": [["x"]], "n": 1}),
        ("components", {"r": [0]}),
        ("check-invariance", {"order": 0, "m": 1, "generators": ["Y0_11"], "jet": [[["x"]]]}),
    ],
)
def test_bad_input_exit_2(capsys, command, payload):
    code, report = invoke(capsys, command, payload)
    assert code == 2 and report["status"] == "error" and report["error"]


def test_unparseable_json(capsys):
    assert main(["prolong", "--input", "{not json"]) == 2


def test_input_file_and_output_file(tmp_path, capsys):
    src = tmp_path / "in.json"
    src.write_text(json.dumps({"r": [3]}))
    out = tmp_path / "out.json"
    assert main(["components", "--input", str(src), "--output", str(out)]) == 0
    assert json.loads(out.read_text())["result"]["l"] == 3


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("PVP_BUDGET", "7")
    monkeypatch.setenv("PVP_ORDER", "2")
    s = Settings.from_env(order=3)
    assert s.budget == 7 and s.order == 3
    monkeypatch.setenv("PVP_SEED", "abc")
    with pytest.raises(ValueError):
        Settings.from_env()


def test_selftest_budget_one():
    code, report = run("selftest", None, Settings(budget=1))
    assert code == 3
    exceeded = [c["name"] for c in report["checks"] if c["status"] == "budget_exceeded"]
    assert "ideals.groebner_vs_dense_oracle" in exceeded
    jsonschema.validate(report, schema("selftest"))
