import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpade import serialize
from qpade.cli import RunConfig, main, run
from qpade.core import build_solution, valid_problems
from qpade.exact import RatFunc

PROBLEMS = list(valid_problems(7))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PROBLEMS))
def test_json_round_trip(p):
    sol = build_solution(p)
    text = serialize.to_json(sol)
    back = serialize.from_json(text)
    assert back == sol
    assert serialize.to_json(back) == text


def test_ratfunc_objects():
    q = RatFunc.q()
    assert serialize.ratfunc_to_obj(RatFunc(0)) == {"num": [], "den": ["1"]}
    assert serialize.ratfunc_to_obj(1 / (1 - q)) == {"num": ["-1"], "den": ["-1", "1"]}
    with pytest.raises(ValueError):
        serialize.ratfunc_from_obj({"num": ["2"], "den": ["2"]})


def test_construct_li2(capsys):
    assert main(["construct", "--A", "2", "--n", "0", "--rho", "0", "--sigma", "0", "--nu", "0", "--format", "json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["P"]["2"] == [{"num": ["1"], "den": ["1"]}]
    assert out["P"]["1"] == [{"num": [], "den": ["1"]}]


def test_unique_exit_zero(capsys):
    assert main(["unique", "--A", "2", "--n", "1", "--rho", "1", "--sigma", "1", "--nu", "0"]) == 0
    assert json.loads(capsys.readouterr().out)["nullspace_dimension"] == 1


def test_constraint_exit_two(capsys):
    assert main(["construct", "--A", "1", "--n", "0", "--rho", "0", "--sigma", "0", "--nu", "0"]) == 2
    assert "rho + sigma + nu + 2 <= A(n+1)" in capsys.readouterr().err


def test_usage_exit_two():
    assert main(["construct", "--A", "two", "--n", "0"]) == 2
    assert main(["frobnicate"]) == 2


def test_capacity_exit_two(monkeypatch):
    monkeypatch.setenv("QPADE_MAX_DIM", "3")
    assert main(["unique", "--A", "4", "--n", "0"]) == 2
    assert main(["sweep", "--bound", "4"]) == 2


@pytest.mark.parametrize("command", ["verify", "unique", "classical", "confluence"])
def test_commands_pass(command, capsys):
    assert main([command, "--A", "2", "--n", "1", "--rho", "1", "--nu", "1", "--format", "text"]) == 0
    assert "passed: True" in capsys.readouterr().out


def test_classical_reports_order(capsys):
    main(["classical", "--A", "2", "--n", "1", "--rho", "1", "--sigma", "1"])
    out = json.loads(capsys.readouterr().out)
    assert out["i_required_order"] == 0 and out["i_observed_order"] == 1


def test_truncation_exit_two():
    assert main(["confluence", "--A", "2", "--n", "0", "--terms", "3"]) == 2


def test_deterministic_output():
    cfg = RunConfig("construct", A=3, n=1, rho=1, sigma=0, nu=1)
    assert run(cfg) == run(cfg)


def test_sweep_small(capsys):
    assert main(["sweep", "--bound", "4", "--jobs", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["instances"] == len(list(valid_problems(4)))
    assert out["failed"] == []


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qpade", "construct", "--A", "2", "--n", "0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["problem"]["A"] == 2
