import json
from pathlib import Path

import httpx
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from cfprob.cli import main
from cfprob.service import create_app
from cfprob.service import schemas

EXAMPLE_MODEL = str(Path(__file__).resolve().parent.parent / "models" / "example.cpm")


@pytest.fixture()
def runner():
    return CliRunner()


def test_query_pi(runner):
    result = runner.invoke(main, ["query", "--model", EXAMPLE_MODEL, "--pi", "A"])
    assert result.exit_code == 0
    assert result.output == "0.6\n"


def test_query_counterfactual(runner):
    result = runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--cf", "C", "--given", "A"]
    )
    assert result.exit_code == 0
    assert result.output == "0.6666666667\n"


def test_query_undefined_exit_code(runner):
    result = runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--cf", "C", "--given", "~B & ~C"]
    )
    assert result.exit_code == 1
    assert result.output.splitlines()[0] == "undefined"


def test_query_believes_and_status(runner):
    assert runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--believes", "~A"]
    ).output == "true\n"
    assert runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--status", "C"]
    ).output == "indeterminate\n"
    assert runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--n", "B"]
    ).output == "0.6\n"
    assert runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--p", "C"]
    ).output == "0.625\n"
    assert runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--cond", "C", "--given", "B"]
    ).output == "0.625\n"


def test_query_conditional_form(runner):
    result = runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--conditional", "A => B"]
    )
    assert result.output == "true\n"
    result = runner.invoke(
        main, ["query", "--model", EXAMPLE_MODEL, "--conditional", "A => C"]
    )
    assert result.output == "false\n"


def test_query_needs_exactly_one_flag(runner):
    assert runner.invoke(main, ["query", "--model", EXAMPLE_MODEL]).exit_code == 2
    assert (
        runner.invoke(
            main, ["query", "--model", EXAMPLE_MODEL, "--pi", "A", "--n", "B"]
        ).exit_code
        == 2
    )


def test_syntax_error_exit_code(runner):
    result = runner.invoke(main, ["query", "--model", EXAMPLE_MODEL, "--pi", "A && B"])
    assert result.exit_code == 2
    assert "syntax error" in result.output


def test_revise_output(runner):
    result = runner.invoke(main, ["revise", "--model", EXAMPLE_MODEL, "--by", "A"])
    assert result.exit_code == 0
    assert "belief: A B ~C | A B C" in result.output
    assert "A B C  mass=0.08  P=0.6666666667" in result.output


def test_revise_undefined(runner):
    result = runner.invoke(main, ["revise", "--model", EXAMPLE_MODEL, "--by", "~B & ~C"])
    assert result.exit_code == 1


def test_natural_revise_emits_model(runner):
    result = runner.invoke(
        main, ["revise", "--model", EXAMPLE_MODEL, "--by", "A", "--natural"]
    )
    assert result.exit_code == 0
    assert "revised model:" in result.output
    assert "pi=0.5" in result.output


def test_image_command(runner):
    result = runner.invoke(main, ["image", "--model", EXAMPLE_MODEL, "--by", "A"])
    assert result.exit_code == 0
    assert "A B C" in result.output
    result = runner.invoke(
        main, ["image", "--model", EXAMPLE_MODEL, "--by", "A", "--policy", "centered"]
    )
    assert result.exit_code == 0


def test_image_explicit_policy_file(runner, tmp_path):
    table = tmp_path / "policy.sel"
    table.write_text(
        "select ~A B C | A -> A B C\nselect ~A B ~C | A -> A B ~C\n"
    )
    result = runner.invoke(
        main, ["image", "--model", EXAMPLE_MODEL, "--by", "A", "--policy", str(table)]
    )
    assert result.exit_code == 0
    assert "A B C  mass=0.5" in result.output


def test_simulate_command(runner):
    result = runner.invoke(main, ["simulate", "--model", EXAMPLE_MODEL, "--by", "A", "--of", "C"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "direct      0.6666666667"
    assert lines[1] == "sequence    0.6666666667"
    assert lines[2] == "single      0.6666666667"
    assert "agreement   ok" in result.output
    result = runner.invoke(
        main, ["simulate", "--model", EXAMPLE_MODEL, "--by", "false", "--of", "C"]
    )
    assert result.exit_code == 1
    assert "undefined" in result.output


def test_worlds_command(runner):
    result = runner.invoke(main, ["worlds", "--model", EXAMPLE_MODEL])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 6
    result = runner.invoke(main, ["worlds", "--model", EXAMPLE_MODEL, "--of", "~B & ~C"])
    assert {line.split()[0] for line in result.output.splitlines()} == {"A", "~A"}


def test_parse_command(runner):
    result = runner.invoke(main, ["parse", "--atoms", "A,B,C", "A->B->C"])
    assert result.output == "A -> B -> C\n"
    result = runner.invoke(main, ["parse", "--model", EXAMPLE_MODEL, "¬A ∧ B"])
    assert result.output == "~A & B\n"


def test_check_command(runner):
    result = runner.invoke(
        main, ["check", "--model", EXAMPLE_MODEL, "--suite", "all", "--depth", "1"]
    )
    assert result.exit_code == 0
    assert "overall: PASS" in result.output
    assert "suite: agm" in result.output
    assert "suite: theorems" in result.output


def test_check_failure_exit_code(runner, monkeypatch):
    import cfprob.cli as cli_module

    def broken_check(req, store=None):
        return schemas.CheckResponse(
            passed=False, checks_run=1, checks_failed=1, reports=[]
        )

    monkeypatch.setitem(
        cli_module._OPS, "check", (broken_check, schemas.CheckResponse, True)
    )
    result = runner.invoke(main, ["check", "--model", EXAMPLE_MODEL])
    assert result.exit_code == 3


def test_gen_deterministic(runner):
    one = runner.invoke(main, ["gen", "--seed", "5", "--atoms", "3", "--ranks", "2"])
    two = runner.invoke(main, ["gen", "--seed", "5", "--atoms", "3", "--ranks", "2"])
    assert one.output == two.output
    assert one.output.startswith("atoms A B C\n")


def test_gen_round_trips_through_query(runner, tmp_path):
    generated = runner.invoke(main, ["gen", "--seed", "8", "--atoms", "4"])
    path = tmp_path / "random.cpm"
    path.write_text(generated.output)
    result = runner.invoke(main, ["query", "--model", str(path), "--p", "true"])
    assert result.exit_code == 0
    assert result.output == "1\n"


def test_json_output(runner):
    result = runner.invoke(
        main, ["--json", "query", "--model", EXAMPLE_MODEL, "--pi", "A"]
    )
    assert result.exit_code == 0
    body = json.loads(result.output)
    assert body["kind"] == "pi"
    assert body["value"] == 0.6
    again = runner.invoke(main, ["--json", "query", "--model", EXAMPLE_MODEL, "--pi", "A"])
    assert again.output == result.output  # byte-identical


def test_missing_model_file(runner):
    result = runner.invoke(main, ["query", "--model", "no/such.cpm", "--pi", "A"])
    assert result.exit_code == 2


def test_max_atoms_override(runner, tmp_path):
    names = [f"x{i}" for i in range(21)]
    path = tmp_path / "wide.cpm"
    path.write_text(
        "atoms " + " ".join(names) + "\nworld " + " ".join(names) + " pi=1.0\n"
    )
    result = runner.invoke(main, ["query", "--model", str(path), "--pi", "x0"])
    assert result.exit_code == 2
    assert "exceeds the limit" in result.output
    result = runner.invoke(
        main, ["--max-atoms", "25", "query", "--model", str(path), "--pi", "x0"]
    )
    assert result.exit_code == 0
    assert result.output == "1\n"


def test_out_of_range_options_are_usage_errors(runner):
    result = runner.invoke(
        main, ["revise", "--model", EXAMPLE_MODEL, "--by", "A", "--natural",
               "--demotion", "1.0"]
    )
    assert result.exit_code == 2
    assert runner.invoke(main, ["gen", "--atoms", "11"]).exit_code == 2
    assert runner.invoke(
        main, ["check", "--model", EXAMPLE_MODEL, "--depth", "5"]
    ).exit_code == 2


def test_server_mode_round_trip(runner, monkeypatch):
    client = TestClient(create_app())

    def fake_post(url, json=None, timeout=None):
        path = url.split("http://service", 1)[1]
        return client.post(path, json=json)

    monkeypatch.setattr(httpx, "post", fake_post)
    result = runner.invoke(
        main,
        ["--server", "http://service", "query", "--model", EXAMPLE_MODEL, "--pi", "A"],
    )
    assert result.exit_code == 0
    assert result.output == "0.6\n"
    result = runner.invoke(
        main,
        ["--server", "http://service", "query", "--model", EXAMPLE_MODEL, "--pi", "A &&"],
    )
    assert result.exit_code == 2


def test_server_mode_undefined(runner, monkeypatch):
    client = TestClient(create_app())

    def fake_post(url, json=None, timeout=None):
        return client.post(url.split("http://service", 1)[1], json=json)

    monkeypatch.setattr(httpx, "post", fake_post)
    result = runner.invoke(
        main,
        ["--server", "http://service", "query", "--model", EXAMPLE_MODEL,
         "--cf", "C", "--given", "~B & ~C"],
    )
    assert result.exit_code == 1
    assert result.output.splitlines()[0] == "undefined"
